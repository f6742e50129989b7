//! Folding functors on the matrix category: the complete folding over a
//! group and the transversal folding over folding data (G, H, eta, T) with
//! eta the identity family. Includes the executable forms of the
//! equivariance and factorization statements.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::FieldElement;
use crate::group::{is_fixed_by, quotient_group, FoldingData, GaloisGroup, Subgroup};
use crate::matrix::{apply_aut_matrix, coset_perm_map, IndexCodec, Matrix};

pub const DEFAULT_MAX_FOLDED_DIM: u64 = 4096;

/// Folded-dimension cap, overridable through GALOIS_CPM_MAX_DIM.
pub fn max_folded_dim() -> u64 {
    std::env::var("GALOIS_CPM_MAX_DIM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_FOLDED_DIM)
}

/// Validates base^exp against the folded-dimension cap.
pub(crate) fn ensure_folded_dim(base: usize, exp: usize) -> Result<usize> {
    checked_power(base, exp)
}

fn checked_power(base: usize, exp: usize) -> Result<usize> {
    let cap = max_folded_dim();
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc *= base as u128;
        if acc > cap as u128 {
            return Err(Error::DimensionCap(acc, cap));
        }
    }
    Ok(acc as usize)
}

/// A folded object: base dimension n raised to the transversal length.
#[derive(Debug, Clone)]
pub struct FoldedObject {
    base_dim: usize,
    folding: FoldingData,
    total_dim: usize,
}

impl FoldedObject {
    pub fn new(base_dim: usize, folding: FoldingData) -> Result<FoldedObject> {
        let total_dim = checked_power(base_dim, folding.transversal().len())?;
        Ok(FoldedObject { base_dim, folding, total_dim })
    }

    /// Complete folding: H trivial, so the transversal is all of G.
    pub fn complete(base_dim: usize, group: &Arc<GaloisGroup>) -> Result<FoldedObject> {
        let trivial = Subgroup::trivial(group);
        FoldedObject::new(base_dim, FoldingData::canonical(group, &trivial)?)
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn folding(&self) -> &FoldingData {
        &self.folding
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        self.folding.group()
    }

    pub fn codec(&self) -> IndexCodec {
        IndexCodec::uniform(self.base_dim, self.folding.transversal().len())
    }
}

/// Kronecker product of the images of `m` under a list of automorphisms,
/// in the order given.
fn fold_over<'a>(
    m: &Matrix,
    elems: impl Iterator<Item = &'a crate::group::GroupElement>,
) -> Result<Matrix> {
    let ctx = m.context();
    let mut acc = Matrix::scalar(crate::fields::ContextOps::one(ctx));
    for g in elems {
        acc = acc.tensor(&apply_aut_matrix(m, g)?)?;
    }
    Ok(acc)
}

/// Complete folding: the tensor product of phi_g(M) over the whole group in
/// canonical order. On 1x1 matrices this is the field norm.
pub fn fold_complete(m: &Matrix, group: &Arc<GaloisGroup>) -> Result<Matrix> {
    checked_power(m.rows().max(m.cols()), group.order())?;
    fold_over(m, group.elements().iter())
}

/// Transversal folding for folding data tau = (G, H, eta, T). Every entry
/// must be fixed by H: that is exactly membership in the equivariant
/// subcategory on which the folding functor is defined.
pub fn fold_transversal(m: &Matrix, tau: &FoldingData) -> Result<Matrix> {
    for e in m.entries() {
        if !is_fixed_by(e, tau.subgroup())? {
            return Err(Error::NotHFixed);
        }
    }
    checked_power(m.rows().max(m.cols()), tau.transversal().len())?;
    fold_over(m, tau.transversal().rep_elements())
}

/// Raw transversal fold without the H-fixedness gate; used where the
/// equivariance is carried by factor permutations instead of entrywise
/// fixedness (factorization checks, H-folded inputs).
pub(crate) fn fold_reps_unchecked(m: &Matrix, tau: &FoldingData) -> Result<Matrix> {
    checked_power(m.rows().max(m.cols()), tau.transversal().len())?;
    fold_over(m, tau.transversal().rep_elements())
}

/// Executable equivariance: phi_g(fld M) must equal the conjugation of
/// fld M by the factor permutation of g (rho is trivial since eta is).
pub fn check_equivariance(m: &Matrix, group: &Arc<GaloisGroup>, g: usize) -> Result<bool> {
    let folded = fold_complete(m, group)?;
    let lhs = apply_aut_matrix(&folded, group.element(g))?;
    let pr = coset_perm_map(group, g, m.rows());
    let pc = coset_perm_map(group, g, m.cols());
    let rhs = folded.gather(&pr, &pc);
    Ok(lhs == rhs)
}

/// Relabeling of flat indices induced by permuting tensor factors:
/// out[flat of y] = flat of x with x_i = y_(position of i under `map`),
/// where map[q] is the source factor placed at position q.
pub(crate) fn factor_relabel_flat(dim: usize, map: &[usize]) -> Vec<usize> {
    let count = map.len();
    let codec = IndexCodec::uniform(dim, count);
    let inv = crate::matrix::invert_perm(map);
    let mut out = vec![0usize; codec.total()];
    for (flat, slot) in out.iter_mut().enumerate() {
        let y = codec.decode(flat);
        let x: Vec<usize> = (0..count).map(|i| y[inv[i]]).collect();
        *slot = codec.encode(&x);
    }
    out
}

/// Executable factorization: the complete G-folding equals the transversal
/// folding of the complete H-folding, up to the cached regrouping
/// permutation from canonical order to coset-major order. For normal H the
/// quotient-action formulation is checked as well: folding over the
/// quotient's representatives agrees, and the quotient action on the
/// H-folded matrix is well-defined up to the H factor permutations.
pub fn check_factorization(m: &Matrix, group: &Arc<GaloisGroup>, h: &Subgroup) -> Result<bool> {
    let fold_g = fold_complete(m, group)?;
    let h_group = h.as_group();
    let fold_h = fold_complete(m, &h_group)?;
    let tau = FoldingData::canonical(group, h)?;
    let outer = fold_reps_unchecked(&fold_h, &tau)?;

    // outer = Q_r . fold_g . Q_c^{-1} for the regrouping permutation, i.e.
    // outer[y][z] = fold_g[x(y)][w(z)] through the coset-major relabeling.
    let row_map = factor_relabel_flat(m.rows(), tau.regroup_map());
    let col_map = factor_relabel_flat(m.cols(), tau.regroup_map());
    if outer != fold_g.gather(&row_map, &col_map) {
        return Ok(false);
    }

    if h.is_normal() {
        let quot = quotient_group(group, h)?;
        // Quotient representatives are the canonical transversal, so the
        // complete fold over the quotient action reproduces the outer fold.
        let quot_fold = fold_over(&fold_h, quot.elements().iter())?;
        if quot_fold != outer {
            return Ok(false);
        }
        // Well-definedness of the quotient action: phi_{r1 r2} agrees with
        // phi_{rep(c1 c2)} on fold_h up to the factor permutation of the
        // separating h = rep(c1 c2)^{-1} r1 r2 in H.
        for c1 in 0..quot.order() {
            for c2 in 0..quot.order() {
                let r1 = group.index_of(quot.element(c1)).expect("rep lies in G");
                let r2 = group.index_of(quot.element(c2)).expect("rep lies in G");
                let prod = group.op(r1, r2);
                let rep12 = group
                    .index_of(quot.element(quot.op(c1, c2)))
                    .expect("rep lies in G");
                let sep = group.op(group.inverse(rep12), prod);
                let h_local = h
                    .members()
                    .binary_search(&sep)
                    .expect("separating element lies in H");
                let lhs = apply_aut_matrix(&fold_h, group.element(prod))?;
                let base = apply_aut_matrix(&fold_h, group.element(rep12))?;
                let pr = coset_perm_map(&h_group, h_local, m.rows());
                let pc = coset_perm_map(&h_group, h_local, m.cols());
                if lhs != base.gather(&pr, &pc) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Entry of a folded 1x1 matrix as a field element.
pub fn folded_scalar(m: &Matrix) -> Option<&FieldElement> {
    m.as_scalar()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{
        cyc_context, norm_full, quad_context, ContextOps, FieldContext,
    };
    use crate::group::{GroupElement, Transversal};
    use crate::matrix::interleave_perm_map;
    use crate::rational::rat_i64;
    use crate::sample::{rng_from_seed, sample_element, sample_matrix};

    fn subgroup_by_units(ctx: &Arc<FieldContext>, gens: &[u64]) -> Subgroup {
        let group = ctx.galois_group();
        let idxs: Vec<usize> = gens
            .iter()
            .map(|&k|

                group
                    .index_of(&GroupElement::Unit {
                        n: match ctx.as_ref() {
                            FieldContext::Cyclotomic(c) => c.conductor(),
                            _ => unreachable!(),
                        },
                        k,
                    })
                    .unwrap())
            .collect();
        Subgroup::generated(group, &idxs)
    }

    #[test]
    fn fold_of_scalar_is_norm() {
        let c5 = cyc_context(5).unwrap();
        let g = c5.galois_group().clone();
        let x = c5.one().sub(&c5.generator());
        let folded = fold_complete(&Matrix::scalar(x.clone()), &g).unwrap();
        assert_eq!(folded.as_scalar().unwrap(), &norm_full(&x));
        assert_eq!(folded.as_scalar().unwrap().to_rational().unwrap(), rat_i64(5));

        let mut rng = rng_from_seed(20);
        for _ in 0..25 {
            let x = sample_element(&mut rng, &c5, 4);
            let folded = fold_complete(&Matrix::scalar(x.clone()), &g).unwrap();
            assert_eq!(folded.as_scalar().unwrap(), &norm_full(&x));
        }
    }

    #[test]
    fn fold_of_identity_is_identity() {
        let c5 = cyc_context(5).unwrap();
        let g = c5.galois_group().clone();
        let folded = fold_complete(&Matrix::identity(&c5, 2), &g).unwrap();
        assert_eq!(folded, Matrix::identity(&c5, 16));
    }

    #[test]
    fn fold_transversal_spec_examples() {
        let c5 = cyc_context(5).unwrap();
        let g = c5.galois_group().clone();
        // H = G: single-representative transversal, M unchanged
        let full = Subgroup::full(&g);
        let tau = FoldingData::canonical(&g, &full).unwrap();
        let m = sample_matrix(&mut rng_from_seed(21), &c5, 2, 2, 3);
        // entries must be G-fixed for the functor: use a rational matrix
        let mq = {
            let entries = vec![
                c5.from_integer(1),
                c5.from_integer(-2),
                c5.from_integer(0),
                c5.from_integer(5),
            ];
            Matrix::from_entries(2, 2, entries).unwrap()
        };
        assert_eq!(fold_transversal(&mq, &tau).unwrap(), mq);

        // a in Q(sqrt 5) inside Q(zeta5), H = <sigma^2>, T = {1, 2}:
        // [[a sigma(a)]] equals the quadratic-context norm of a.
        let z = c5.generator();
        let period = z.add(&z.pow(4)); // (-1 + sqrt5)/2
        let h = subgroup_by_units(&c5, &[4]);
        let tau = FoldingData::canonical(&g, &h).unwrap();
        // a = x + y * period with x = 3, y = 2  <->  (x - y/2) + (y/2) sqrt5
        let a = c5.from_integer(3).add(&period.mul(&c5.from_integer(2)));
        let folded = fold_transversal(&Matrix::scalar(a), &tau).unwrap();
        // oracle: 2x2 multiplication-matrix determinant in Q(sqrt 5)
        let q5 = quad_context(5).unwrap();
        let b = q5.from_integer(2).add(&q5.generator()); // 3 + 2p = 2 + sqrt5
        let oracle = norm_full(&b);
        assert_eq!(
            folded.as_scalar().unwrap().to_rational().unwrap(),
            oracle.to_rational().unwrap()
        );

        // an entry not fixed by H is rejected
        assert_eq!(
            fold_transversal(&Matrix::scalar(z.clone()), &tau),
            Err(Error::NotHFixed)
        );
        let _ = m;
    }

    #[test]
    fn equivariance_spec_examples() {
        let c5 = cyc_context(5).unwrap();
        let g5 = c5.galois_group().clone();
        // trivial for the identity
        let m = sample_matrix(&mut rng_from_seed(22), &c5, 2, 2, 3);
        assert!(check_equivariance(&m, &g5, 0).unwrap());
        // a concrete 16x16 instance
        let m = Matrix::from_entries(
            2,
            2,
            vec![c5.generator(), c5.one(), c5.zero(), c5.one()],
        )
        .unwrap();
        let g2 = g5.index_of(&GroupElement::Unit { n: 5, k: 2 }).unwrap();
        assert!(check_equivariance(&m, &g5, g2).unwrap());
        // Q(i) = conductor 4, random 2x2, both group elements
        let c4 = cyc_context(4).unwrap();
        let g4 = c4.galois_group().clone();
        let mut rng = rng_from_seed(23);
        for _ in 0..10 {
            let m = sample_matrix(&mut rng, &c4, 2, 2, 4);
            for g in 0..g4.order() {
                assert!(check_equivariance(&m, &g4, g).unwrap());
            }
        }
    }

    #[test]
    fn equivariance_holds_on_rectangular_matrices() {
        let c5 = cyc_context(5).unwrap();
        let g5 = c5.galois_group().clone();
        let mut rng = rng_from_seed(24);
        let m = sample_matrix(&mut rng, &c5, 2, 1, 3);
        for g in 0..g5.order() {
            assert!(check_equivariance(&m, &g5, g).unwrap());
        }
    }

    #[test]
    fn factorization_spec_examples() {
        // trivial H reduces to fold_complete = fold_complete
        let c5 = cyc_context(5).unwrap();
        let g5 = c5.galois_group().clone();
        let m = sample_matrix(&mut rng_from_seed(25), &c5, 2, 2, 3);
        assert!(check_factorization(&m, &g5, &Subgroup::trivial(&g5)).unwrap());

        // C6 (n = 7), H = <tau^3> = <6>, 1x1: both sides are the norm
        let c7 = cyc_context(7).unwrap();
        let g7 = c7.galois_group().clone();
        let h = subgroup_by_units(&c7, &[6]);
        let x = sample_element(&mut rng_from_seed(26), &c7, 3);
        assert!(check_factorization(&Matrix::scalar(x.clone()), &g7, &h).unwrap());
        assert_eq!(
            fold_complete(&Matrix::scalar(x.clone()), &g7)
                .unwrap()
                .as_scalar()
                .unwrap(),
            &norm_full(&x)
        );

        // C6, H = <tau^2> = <2> (normal), random 2x2: 64x64 comparison
        let h2 = subgroup_by_units(&c7, &[2]);
        let m = sample_matrix(&mut rng_from_seed(27), &c7, 2, 2, 2);
        assert!(check_factorization(&m, &g7, &h2).unwrap());
    }

    #[test]
    fn folding_functoriality_with_interleave() {
        let c4 = cyc_context(4).unwrap();
        let g4 = c4.galois_group().clone();
        let mut rng = rng_from_seed(28);
        for _ in 0..10 {
            let m = sample_matrix(&mut rng, &c4, 2, 2, 3);
            let n = sample_matrix(&mut rng, &c4, 2, 2, 3);
            // fold(M N) = fold(M) fold(N)
            assert_eq!(
                fold_complete(&m.compose(&n).unwrap(), &g4).unwrap(),
                fold_complete(&m, &g4)
                    .unwrap()
                    .compose(&fold_complete(&n, &g4).unwrap())
                    .unwrap()
            );
            // fold(M (x) N) regrouped by the interleaving equals
            // fold(M) (x) fold(N)
            let lhs = fold_complete(&m.tensor(&n).unwrap(), &g4).unwrap();
            let pr = interleave_perm_map(m.rows(), n.rows(), g4.order());
            let pc = interleave_perm_map(m.cols(), n.cols(), g4.order());
            let rhs = fold_complete(&m, &g4)
                .unwrap()
                .tensor(&fold_complete(&n, &g4).unwrap())
                .unwrap();
            assert_eq!(lhs.gather(&pr, &pc), rhs);
        }
    }

    #[test]
    fn transversal_independence_on_fixed_inputs() {
        // two transversals of H act identically on H-fixed entries
        let c5 = cyc_context(5).unwrap();
        let g5 = c5.galois_group().clone();
        let h = subgroup_by_units(&c5, &[4]); // {1, 4}
        let canon = Transversal::canonical(&h); // reps {1, 2}
        // alternative transversal {1, 3}: 3 lies in the coset {2, 3}
        let three = g5.index_of(&GroupElement::Unit { n: 5, k: 3 }).unwrap();
        let alt = Transversal::new(&h, vec![0, three]).unwrap();
        let tau1 = FoldingData::new(&g5, &h, canon).unwrap();
        let tau2 = FoldingData::new(&g5, &h, alt).unwrap();
        let z = c5.generator();
        let period = z.add(&z.pow(4));
        let m = Matrix::from_entries(
            2,
            2,
            vec![
                period.clone(),
                c5.one(),
                period.mul(&period),
                c5.from_integer(-3),
            ],
        )
        .unwrap();
        assert_eq!(
            fold_transversal(&m, &tau1).unwrap(),
            fold_transversal(&m, &tau2).unwrap()
        );
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let c5 = cyc_context(5).unwrap();
        let g5 = c5.galois_group().clone();
        let m = Matrix::identity(&c5, 9); // 9^4 = 6561 > 4096
        assert!(matches!(
            fold_complete(&m, &g5),
            Err(Error::DimensionCap(_, _))
        ));
    }
}

//! The symmetric monoidal dagger category of exact matrices over a field
//! context: composition, Kronecker tensor, entrywise Galois autofunctors,
//! dagger, and the structural permutations used by foldings and
//! environment structures.
//!
//! Matrices are dense and row-major; the flat index order of a tensor power
//! is always the mixed-radix order of `IndexCodec`, with the leftmost factor
//! most significant. Folded tensor factors follow the canonical group
//! element order, never a coset-contiguous order.

use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fields::{
    context_from_spec, coords_to_strings, element_from_strings, ContextOps, FieldContext,
    FieldElement, FieldSpec,
};
use crate::group::{GaloisGroup, GroupElement};

/// Mixed-radix codec for multi-indices over an ordered list of factor
/// dimensions. Flat index = sum of idx_i * prod(dims_j for j > i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCodec {
    dims: Vec<usize>,
}

impl IndexCodec {
    pub fn new(dims: Vec<usize>) -> Self {
        assert!(dims.iter().all(|&d| d > 0));
        IndexCodec { dims }
    }

    pub fn uniform(dim: usize, count: usize) -> Self {
        IndexCodec::new(vec![dim; count])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn encode(&self, multi: &[usize]) -> usize {
        debug_assert_eq!(multi.len(), self.dims.len());
        let mut flat = 0;
        for (i, &x) in multi.iter().enumerate() {
            debug_assert!(x < self.dims[i]);
            flat = flat * self.dims[i] + x;
        }
        flat
    }

    pub fn decode(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for i in (0..self.dims.len()).rev() {
            out[i] = flat % self.dims[i];
            flat /= self.dims[i];
        }
        debug_assert_eq!(flat, 0);
        out
    }
}

/// Dense exact matrix; the morphisms of the matrix category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
    ctx: Arc<FieldContext>,
}

impl Matrix {
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Matrix> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let ctx = Arc::clone(entries[0].context());
        if entries.iter().any(|e| !e.same_context(&entries[0])) {
            return Err(Error::ContextMismatch);
        }
        Ok(Matrix { rows, cols, entries, ctx })
    }

    pub fn zeros(ctx: &Arc<FieldContext>, rows: usize, cols: usize) -> Matrix {
        let entries = vec![ctx.zero(); rows * cols];
        Matrix { rows, cols, entries, ctx: Arc::clone(ctx) }
    }

    pub fn identity(ctx: &Arc<FieldContext>, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ctx, n, n);
        for i in 0..n {
            *m.get_mut(i, i) = ctx.one();
        }
        m
    }

    pub fn scalar(value: FieldElement) -> Matrix {
        let ctx = Arc::clone(value.context());
        Matrix { rows: 1, cols: 1, entries: vec![value], ctx }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut FieldElement {
        &mut self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// The single entry of a 1x1 matrix.
    pub fn as_scalar(&self) -> Option<&FieldElement> {
        if self.rows == 1 && self.cols == 1 {
            Some(&self.entries[0])
        } else {
            None
        }
    }

    /// Matrix product self * other (composition self after other).
    pub fn compose(&self, other: &Matrix) -> Result<Matrix> {
        if !Arc::ptr_eq(&self.ctx, &other.ctx) && self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b);
                    let cur = out.get(i, j).add(&t);
                    *out.get_mut(i, j) = cur;
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product, row-major multi-index order.
    pub fn tensor(&self, other: &Matrix) -> Result<Matrix> {
        if !Arc::ptr_eq(&self.ctx, &other.ctx) && self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(&self.ctx, rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        *out.get_mut(i1 * other.rows + i2, j1 * other.cols + j2) = a.mul(b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix addition".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Matrix::from_entries(self.rows, self.cols, entries)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        out
    }

    /// Gather rows/cols: `out[i][j] = self[row_map[i]][col_map[j]]`.
    pub fn gather(&self, row_map: &[usize], col_map: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.ctx, row_map.len(), col_map.len());
        for (i, &r) in row_map.iter().enumerate() {
            for (j, &c) in col_map.iter().enumerate() {
                *out.get_mut(i, j) = self.get(r, c).clone();
            }
        }
        out
    }

    /// Determinant by exact Gaussian elimination.
    pub fn det(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut det = self.ctx.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !work.get(r, c).is_zero()) else {
                return Ok(self.ctx.zero());
            };
            if p != c {
                for j in 0..n {
                    let a = work.get(c, j).clone();
                    let b = work.get(p, j).clone();
                    *work.get_mut(c, j) = b;
                    *work.get_mut(p, j) = a;
                }
                det = det.neg();
            }
            let pivot = work.get(c, c).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv()?;
            for r in (c + 1)..n {
                let f = work.get(r, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let t = f.mul(work.get(c, j));
                    let v = work.get(r, j).sub(&t);
                    *work.get_mut(r, j) = v;
                }
            }
        }
        Ok(det)
    }
}

/// Entrywise application of a Galois automorphism; functorial for both
/// composition and tensor.
pub fn apply_aut_matrix(m: &Matrix, g: &GroupElement) -> Result<Matrix> {
    let entries: Result<Vec<FieldElement>> =
        m.entries.iter().map(|e| crate::fields::apply_aut(e, g)).collect();
    Matrix::from_entries(m.rows, m.cols, entries?)
}

/// Dagger: transpose of the entrywise conjugation. `conj` must be the
/// context's conjugation involution.
pub fn dagger(m: &Matrix, conj: &GroupElement) -> Result<Matrix> {
    match m.ctx.conjugation() {
        Some(c) if c == *conj => {}
        _ => return Err(Error::InvalidDagger),
    }
    Ok(apply_aut_matrix(m, conj)?.transpose())
}

/// Dagger with the context's own conjugation.
pub fn dagger_canonical(m: &Matrix) -> Result<Matrix> {
    let conj = m.ctx.conjugation().ok_or(Error::InvalidDagger)?;
    dagger(m, &conj)
}

/// 0/1 permutation matrix with entry 1 at (p(i), i): maps e_i to e_p(i).
pub fn perm_matrix(ctx: &Arc<FieldContext>, p: &[usize]) -> Result<Matrix> {
    let d = p.len();
    let mut seen = vec![false; d];
    for &x in p {
        if x >= d || seen[x] {
            return Err(Error::DimensionMismatch("not a permutation".into()));
        }
        seen[x] = true;
    }
    let mut m = Matrix::zeros(ctx, d, d);
    for (i, &pi) in p.iter().enumerate() {
        *m.get_mut(pi, i) = ctx.one();
    }
    Ok(m)
}

/// The interleaving permutation pi_{A,B} on n^k * m^k dimensions, sending a
/// multi-index ((a_t)_t, (b_t)_t) to ((a_t, b_t))_t.
pub fn interleave_perm_map(n: usize, m: usize, k: usize) -> Vec<usize> {
    let src = IndexCodec::new(
        std::iter::repeat_n(n, k).chain(std::iter::repeat_n(m, k)).collect(),
    );
    let dst = IndexCodec::new((0..2 * k).map(|i| if i % 2 == 0 { n } else { m }).collect());
    let total = src.total();
    let mut p = vec![0usize; total];
    for (flat, slot) in p.iter_mut().enumerate() {
        let multi = src.decode(flat);
        let mut inter = Vec::with_capacity(2 * k);
        for t in 0..k {
            inter.push(multi[t]);
            inter.push(multi[k + t]);
        }
        *slot = dst.encode(&inter);
    }
    p
}

pub fn interleave_perm(ctx: &Arc<FieldContext>, n: usize, m: usize, k: usize) -> Matrix {
    perm_matrix(ctx, &interleave_perm_map(n, m, k)).expect("interleaving is a permutation")
}

/// Index map of the factor permutation sigma^g on n^|G|: the tensor factor
/// at group position t moves to position g*t. As a permutation of flat
/// indices, the image multi-index reads y_s = x_(g^-1 s).
pub fn coset_perm_map(group: &GaloisGroup, g: usize, n: usize) -> Vec<usize> {
    let order = group.order();
    let codec = IndexCodec::uniform(n, order);
    let ginv = group.inverse(g);
    let src_pos: Vec<usize> = (0..order).map(|s| group.op(ginv, s)).collect();
    let total = codec.total();
    let mut p = vec![0usize; total];
    for (flat, slot) in p.iter_mut().enumerate() {
        let x = codec.decode(flat);
        let y: Vec<usize> = (0..order).map(|s| x[src_pos[s]]).collect();
        *slot = codec.encode(&y);
    }
    p
}

pub fn coset_perm(
    ctx: &Arc<FieldContext>,
    group: &GaloisGroup,
    g: usize,
    n: usize,
) -> Matrix {
    perm_matrix(ctx, &coset_perm_map(group, g, n)).expect("factor action is a permutation")
}

pub fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0usize; p.len()];
    for (i, &pi) in p.iter().enumerate() {
        inv[pi] = i;
    }
    inv
}

/// `P_rows^-1 * M * P_cols` as a pure gather: `out[i][j] = M[pr[i]][pc[j]]`.
pub fn conjugate_by_perms(m: &Matrix, row_perm: &[usize], col_perm: &[usize]) -> Matrix {
    m.gather(row_perm, col_perm)
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Vec<Vec<String>>>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| coords_to_strings(self.get(i, j))).collect())
            .collect();
        MatrixWire { rows: self.rows, cols: self.cols, field: self.ctx.spec(), entries }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        let ctx = context_from_spec(&wire.field).map_err(serde::de::Error::custom)?;
        if wire.entries.len() != wire.rows {
            return Err(serde::de::Error::custom("row count mismatch"));
        }
        let mut entries = Vec::with_capacity(wire.rows * wire.cols);
        for row in &wire.entries {
            if row.len() != wire.cols {
                return Err(serde::de::Error::custom("column count mismatch"));
            }
            for coords in row {
                entries
                    .push(element_from_strings(&ctx, coords).map_err(serde::de::Error::custom)?);
            }
        }
        Matrix::from_entries(wire.rows, wire.cols, entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{cyc_context, quad_context, ArithOp};
    use crate::rational::{rat, rat_i64};
    use crate::sample::{rng_from_seed, sample_matrix, sample_perm};
    use rand::Rng;

    fn rat_matrix(ctx: &Arc<FieldContext>, rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        let entries = vals.iter().map(|&v| ctx.from_integer(v)).collect();
        Matrix::from_entries(rows, cols, entries).unwrap()
    }

    #[test]
    fn codec_round_trip() {
        let codec = IndexCodec::new(vec![2, 3, 4]);
        assert_eq!(codec.total(), 24);
        for flat in 0..24 {
            let multi = codec.decode(flat);
            assert_eq!(codec.encode(&multi), flat);
        }
        assert_eq!(codec.encode(&[1, 2, 3]), 23);
        assert_eq!(codec.decode(7), vec![0, 1, 3]);
    }

    #[test]
    fn compose_spec_examples() {
        let c5 = cyc_context(5).unwrap();
        let f = sample_matrix(&mut rng_from_seed(1), &c5, 3, 3, 3);
        let id = Matrix::identity(&c5, 3);
        assert_eq!(f.compose(&id).unwrap(), f);
        assert_eq!(id.compose(&f).unwrap(), f);

        // scalar case: oracle is field multiplication
        let z = c5.generator();
        let a = c5.one().sub(&z);
        let b = c5.one().add(&z);
        let prod = Matrix::scalar(a.clone()).compose(&Matrix::scalar(b.clone())).unwrap();
        assert_eq!(
            prod.as_scalar().unwrap(),
            &crate::fields::field_arith(&a, &b, ArithOp::Mul).unwrap()
        );

        // permutation action on columns
        let m = rat_matrix(&c5, 2, 2, &[1, 2, 3, 4]);
        let swap = rat_matrix(&c5, 2, 2, &[0, 1, 1, 0]);
        assert_eq!(m.compose(&swap).unwrap(), rat_matrix(&c5, 2, 2, &[2, 1, 4, 3]));

        assert!(m.compose(&rat_matrix(&c5, 3, 2, &[0; 6])).is_err());
    }

    #[test]
    fn tensor_spec_examples() {
        let c5 = cyc_context(5).unwrap();
        let f = sample_matrix(&mut rng_from_seed(2), &c5, 2, 3, 3);
        let unit = Matrix::scalar(c5.one());
        assert_eq!(f.tensor(&unit).unwrap(), f);
        let lhs = Matrix::identity(&c5, 2).tensor(&Matrix::identity(&c5, 3)).unwrap();
        assert_eq!(lhs, Matrix::identity(&c5, 6));
        let a = c5.generator();
        let b = c5.generator().pow(3);
        assert_eq!(
            Matrix::scalar(a.clone()).tensor(&Matrix::scalar(b.clone())).unwrap(),
            Matrix::scalar(a.mul(&b))
        );
        let c7 = cyc_context(7).unwrap();
        assert!(f.tensor(&Matrix::identity(&c7, 2)).is_err());
    }

    #[test]
    fn apply_aut_matrix_spec_examples() {
        let c5 = cyc_context(5).unwrap();
        let g2 = GroupElement::Unit { n: 5, k: 2 };
        let g4 = GroupElement::Unit { n: 5, k: 4 };
        let m = rat_matrix(&c5, 2, 2, &[1, -3, 0, 7]);
        assert_eq!(apply_aut_matrix(&m, &g2).unwrap(), m);
        let z = Matrix::scalar(c5.generator());
        assert_eq!(
            apply_aut_matrix(&z, &g2).unwrap(),
            Matrix::scalar(c5.generator().pow(2))
        );
        let rand = sample_matrix(&mut rng_from_seed(3), &c5, 3, 2, 4);
        let twice = apply_aut_matrix(&apply_aut_matrix(&rand, &g2).unwrap(), &g2).unwrap();
        assert_eq!(twice, apply_aut_matrix(&rand, &g4).unwrap(), "2*2 = 4 mod 5");
    }

    #[test]
    fn dagger_spec_examples() {
        let c5 = cyc_context(5).unwrap();
        let conj = c5.conjugation().unwrap();
        assert_eq!(conj, GroupElement::Unit { n: 5, k: 4 });
        let m = sample_matrix(&mut rng_from_seed(4), &c5, 3, 2, 4);
        assert_eq!(dagger(&dagger(&m, &conj).unwrap(), &conj).unwrap(), m);
        assert_eq!(
            dagger(&Matrix::scalar(c5.generator()), &conj).unwrap(),
            Matrix::scalar(c5.generator().pow(4))
        );
        let id = Matrix::identity(&c5, 4);
        assert_eq!(dagger(&id, &conj).unwrap(), id);
        // a non-conjugation element is rejected
        assert_eq!(
            dagger(&id, &GroupElement::Unit { n: 5, k: 2 }),
            Err(Error::InvalidDagger)
        );
    }

    #[test]
    fn perm_matrix_spec_examples() {
        let c5 = cyc_context(5).unwrap();
        assert_eq!(perm_matrix(&c5, &[0, 1, 2]).unwrap(), Matrix::identity(&c5, 3));
        assert_eq!(
            perm_matrix(&c5, &[1, 0]).unwrap(),
            rat_matrix(&c5, 2, 2, &[0, 1, 1, 0])
        );
        // composition: P(p o q) = P(p) * P(q), oracle = direct composition
        let mut rng = rng_from_seed(5);
        for _ in 0..10 {
            let p = sample_perm(&mut rng, 6);
            let q = sample_perm(&mut rng, 6);
            let pq: Vec<usize> = (0..6).map(|i| p[q[i]]).collect();
            let lhs = perm_matrix(&c5, &pq).unwrap();
            let rhs = perm_matrix(&c5, &p)
                .unwrap()
                .compose(&perm_matrix(&c5, &q).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
        assert!(perm_matrix(&c5, &[0, 0]).is_err());
    }

    #[test]
    fn interleave_spec_examples() {
        let c5 = cyc_context(5).unwrap();
        // k = 1: identity on n*m
        assert_eq!(interleave_perm(&c5, 2, 3, 1), Matrix::identity(&c5, 6));
        // n = m = 1
        assert_eq!(interleave_perm(&c5, 1, 1, 3), Matrix::identity(&c5, 1));
        // n = m = 2, k = 2: oracle = explicit mixed-radix enumeration
        let p = interleave_perm_map(2, 2, 2);
        let src = IndexCodec::new(vec![2, 2, 2, 2]);
        let dst = IndexCodec::new(vec![2, 2, 2, 2]);
        for (flat, &mapped) in p.iter().enumerate() {
            let m = src.decode(flat);
            let (a1, a2, b1, b2) = (m[0], m[1], m[2], m[3]);
            assert_eq!(mapped, dst.encode(&[a1, b1, a2, b2]));
        }
        // a pinned instance: (a1 a2 b1 b2) = (0,1,1,0) -> ((0,1),(1,0))
        assert_eq!(p[src.encode(&[0, 1, 1, 0])], dst.encode(&[0, 1, 1, 0]));
        // pi * pi^T = id
        let pm = interleave_perm(&c5, 2, 2, 2);
        assert_eq!(pm.compose(&pm.transpose()).unwrap(), Matrix::identity(&c5, 16));
    }

    #[test]
    fn coset_perm_spec_examples() {
        // identity element gives the identity permutation
        let c5 = cyc_context(5).unwrap();
        let g5 = c5.galois_group().clone();
        assert_eq!(coset_perm(&c5, &g5, 0, 2), Matrix::identity(&c5, 16));

        // C2 nontrivial element on n = 2: swap of tensor factors
        let c4 = cyc_context(4).unwrap();
        let g4 = c4.galois_group().clone();
        assert_eq!(g4.order(), 2);
        let p = coset_perm_map(&g4, 1, 2);
        // (x0, x1) -> (x1, x0): flat 1 <-> 2
        assert_eq!(p, vec![0, 2, 1, 3]);

        // composition law in C4
        let mut rng = rng_from_seed(6);
        for _ in 0..10 {
            let g = rng.gen_range(0..g5.order());
            let h = rng.gen_range(0..g5.order());
            let lhs = coset_perm(&c5, &g5, g, 2)
                .compose(&coset_perm(&c5, &g5, h, 2))
                .unwrap();
            let rhs = coset_perm(&c5, &g5, g5.op(g, h), 2);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn perm_matrices_are_galois_fixed() {
        let c5 = cyc_context(5).unwrap();
        let mut rng = rng_from_seed(7);
        let p = perm_matrix(&c5, &sample_perm(&mut rng, 8)).unwrap();
        for g in c5.galois_group().elements() {
            assert_eq!(apply_aut_matrix(&p, g).unwrap(), p);
        }
    }

    #[test]
    fn functoriality_and_dagger_laws_sampled() {
        // 65 rounds x 4 group elements x 2 laws > 500 functoriality cases
        let c5 = cyc_context(5).unwrap();
        let conj = c5.conjugation().unwrap();
        let mut rng = rng_from_seed(8);
        for _ in 0..65 {
            let m = sample_matrix(&mut rng, &c5, 2, 3, 3);
            let n = sample_matrix(&mut rng, &c5, 3, 2, 3);
            for g in c5.galois_group().elements() {
                assert_eq!(
                    apply_aut_matrix(&m.compose(&n).unwrap(), g).unwrap(),
                    apply_aut_matrix(&m, g)
                        .unwrap()
                        .compose(&apply_aut_matrix(&n, g).unwrap())
                        .unwrap()
                );
                assert_eq!(
                    apply_aut_matrix(&m.tensor(&n).unwrap(), g).unwrap(),
                    apply_aut_matrix(&m, g)
                        .unwrap()
                        .tensor(&apply_aut_matrix(&n, g).unwrap())
                        .unwrap()
                );
            }
            // (MN)^dag = N^dag M^dag, (M (x) N)^dag = M^dag (x) N^dag
            assert_eq!(
                dagger(&m.compose(&n).unwrap(), &conj).unwrap(),
                dagger(&n, &conj).unwrap().compose(&dagger(&m, &conj).unwrap()).unwrap()
            );
            assert_eq!(
                dagger(&m.tensor(&n).unwrap(), &conj).unwrap(),
                dagger(&m, &conj).unwrap().tensor(&dagger(&n, &conj).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn bifunctoriality_sampled() {
        let q5 = quad_context(5).unwrap();
        let mut rng = rng_from_seed(9);
        for _ in 0..200 {
            let f = sample_matrix(&mut rng, &q5, 2, 2, 3);
            let g = sample_matrix(&mut rng, &q5, 3, 2, 3);
            let h = sample_matrix(&mut rng, &q5, 2, 2, 3);
            let k = sample_matrix(&mut rng, &q5, 2, 3, 3);
            let lhs = f.tensor(&g).unwrap().compose(&h.tensor(&k).unwrap()).unwrap();
            let rhs = f.compose(&h).unwrap().tensor(&g.compose(&k).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn determinant_cases() {
        let q5 = quad_context(5).unwrap();
        let m = rat_matrix(&q5, 2, 2, &[2, 5, 1, 2]);
        assert_eq!(m.det().unwrap().to_rational().unwrap(), rat_i64(-1));
        let singular = rat_matrix(&q5, 2, 2, &[1, 2, 2, 4]);
        assert!(singular.det().unwrap().is_zero());
        let half = {
            let mut m = Matrix::identity(&q5, 3);
            *m.get_mut(0, 0) = q5.from_rational(&rat(1, 2)).unwrap();
            m
        };
        assert_eq!(half.det().unwrap().to_rational().unwrap(), rat(1, 2));
    }

    #[test]
    fn matrix_json_round_trip() {
        let c5 = cyc_context(5).unwrap();
        let m = sample_matrix(&mut rng_from_seed(10), &c5, 3, 2, 4);
        let json = serde_json::to_string(&m).unwrap();
        let back: Matrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        // bit-exact: serializing again yields the same bytes
        assert_eq!(serde_json::to_string(&back).unwrap(), json);

        let gf = crate::fields::ff_context(2, 4).unwrap();
        let m = sample_matrix(&mut rng_from_seed(11), &gf, 2, 2, 1);
        let back: Matrix = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}

//! Environment structures, discarding and decoherence maps, normal-form
//! morphisms of the folded matrix theories, idempotent compression onto
//! coset-constant index tuples, and the semiring-membership and witness
//! search machinery for the scalar characterizations.
//!
//! Discard and decoherence maps are constructed directly from the
//! coset-constancy predicate on multi-indices over the canonical group
//! order; a test re-derives them from transversal foldings of explicit
//! spider matrices to confirm both constructions agree.

use std::collections::HashSet;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fields::{
    apply_aut, is_totally_positive, norm_rel, transversal_norm, ContextOps, FieldContext,
    FieldElement,
};
use crate::folding::FoldedObject;
use crate::group::{is_fixed_by, GaloisGroup, Subgroup, Transversal};
use crate::matrix::{IndexCodec, Matrix};

/// Coset index of every group position, in the `left_cosets` order (which
/// matches the canonical transversal order).
fn coset_ids(h: &Subgroup) -> Vec<usize> {
    let cosets = h.left_cosets();
    let mut ids = vec![0usize; h.parent().order()];
    for (c, coset) in cosets.iter().enumerate() {
        for &g in coset {
            ids[g] = c;
        }
    }
    ids
}

fn constant_on_cosets(x: &[usize], ids: &[usize], coset_count: usize) -> bool {
    let mut val = vec![usize::MAX; coset_count];
    for (pos, &v) in x.iter().enumerate() {
        let c = ids[pos];
        if val[c] == usize::MAX {
            val[c] = v;
        } else if val[c] != v {
            return false;
        }
    }
    true
}

/// A subgroup-indexed discarding effect: blocks (n_i, H_i) realized as a
/// single 0/1 row on prod_i n_i^|G|, supported exactly on the multi-indices
/// that are constant on every left coset of H_i within each block.
#[derive(Debug, Clone)]
pub struct EnvEffect {
    group: Arc<GaloisGroup>,
    blocks: Vec<(usize, Subgroup)>,
    realized: Matrix,
}

impl EnvEffect {
    pub fn new(
        ctx: &Arc<FieldContext>,
        group: &Arc<GaloisGroup>,
        blocks: Vec<(usize, Subgroup)>,
    ) -> Result<EnvEffect> {
        for (_, h) in &blocks {
            if h.parent().as_ref() != group.as_ref() {
                return Err(Error::ParentMismatch);
            }
        }
        let order = group.order();
        let block_dim: usize = blocks.iter().map(|(n, _)| n).product();
        let total = block_dim.checked_pow(order as u32).ok_or_else(|| {
            Error::DimensionMismatch("environment dimension overflow".into())
        })?;
        let env_codec = IndexCodec::uniform(block_dim, order);
        let block_codec = IndexCodec::new(blocks.iter().map(|(n, _)| *n).collect());
        let ids: Vec<Vec<usize>> = blocks.iter().map(|(_, h)| coset_ids(h)).collect();
        let counts: Vec<usize> = blocks.iter().map(|(_, h)| h.left_cosets().len()).collect();
        let mut row = Matrix::zeros(ctx, 1, total);
        for flat in 0..total {
            let multi = env_codec.decode(flat);
            let per_block: Vec<Vec<usize>> =
                multi.iter().map(|&x| block_codec.decode(x)).collect();
            let ok = (0..blocks.len()).all(|i| {
                let xi: Vec<usize> = per_block.iter().map(|m| m[i]).collect();
                constant_on_cosets(&xi, &ids[i], counts[i])
            });
            if ok {
                *row.get_mut(0, flat) = ctx.one();
            }
        }
        Ok(EnvEffect { group: Arc::clone(group), blocks, realized: row })
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    pub fn blocks(&self) -> &[(usize, Subgroup)] {
        &self.blocks
    }

    pub fn realized(&self) -> &Matrix {
        &self.realized
    }

    /// Dimension of the un-folded environment (product of block dims).
    pub fn block_dim(&self) -> usize {
        self.blocks.iter().map(|(n, _)| n).product()
    }

    /// Flat env indices carrying a 1.
    pub fn support(&self) -> Vec<usize> {
        (0..self.realized.cols())
            .filter(|&j| !self.realized.get(0, j).is_zero())
            .collect()
    }
}

/// The H-discarding map on fld_G(n): a single-block environment effect.
pub fn discard_map(
    ctx: &Arc<FieldContext>,
    n: usize,
    group: &Arc<GaloisGroup>,
    h: &Subgroup,
) -> Result<EnvEffect> {
    EnvEffect::new(ctx, group, vec![(n, h.clone())])
}

/// The H-decoherence map on fld_G(n): the diagonal 0/1 projector onto
/// coset-constant multi-indices; idempotent of rank `n^[G:H]`.
pub fn decohere_map(
    ctx: &Arc<FieldContext>,
    n: usize,
    group: &Arc<GaloisGroup>,
    h: &Subgroup,
) -> Result<Matrix> {
    if h.parent().as_ref() != group.as_ref() {
        return Err(Error::ParentMismatch);
    }
    let order = group.order();
    let codec = IndexCodec::uniform(n, order);
    let ids = coset_ids(h);
    let count = h.left_cosets().len();
    let total = codec.total();
    let mut out = Matrix::zeros(ctx, total, total);
    for flat in 0..total {
        if constant_on_cosets(&codec.decode(flat), &ids, count) {
            *out.get_mut(flat, flat) = ctx.one();
        }
    }
    Ok(out)
}

/// A morphism of the folded theory in normal form: the discarding effect
/// applied to the complete folding of a pure map a : A -> B (x) E.
#[derive(Debug, Clone)]
pub struct CpmMorphism {
    pure_part: Matrix,
    out_dim: usize,
    env: EnvEffect,
    realized: Matrix,
}

impl CpmMorphism {
    pub fn pure_part(&self) -> &Matrix {
        &self.pure_part
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn env(&self) -> &EnvEffect {
        &self.env
    }

    pub fn realized(&self) -> &Matrix {
        &self.realized
    }
}

/// Realizes (id (x) xi) . pi-wiring . fld_G(a) as a concrete matrix from
/// fld_G(A) to fld_G(B), where a : A -> B (x) E and xi discards E.
///
/// Entries are accumulated directly over the effect's support instead of
/// materializing the (out_dim * env)^|G| intermediate fold, so only the
/// realized dimensions count against the folded-dimension cap.
pub fn cpm_morphism(
    a: &Matrix,
    out_dim: usize,
    env_spec: &[(usize, Subgroup)],
) -> Result<CpmMorphism> {
    let ctx = a.context();
    let group = Arc::clone(ctx.galois_group());
    let env = EnvEffect::new(ctx, &group, env_spec.to_vec())?;
    let e = env.block_dim();
    if a.rows() != out_dim * e {
        return Err(Error::DimensionMismatch(format!(
            "pure part has {} rows, expected out_dim {} x env {}",
            a.rows(),
            out_dim,
            e
        )));
    }
    let order = group.order();
    let conjugates: Vec<Matrix> = group
        .elements()
        .iter()
        .map(|g| crate::matrix::apply_aut_matrix(a, g))
        .collect::<Result<_>>()?;
    let out_codec = IndexCodec::uniform(out_dim, order);
    let col_codec = IndexCodec::uniform(a.cols(), order);
    let env_codec = IndexCodec::uniform(e, order);
    crate::folding::ensure_folded_dim(out_dim, order)?;
    crate::folding::ensure_folded_dim(a.cols(), order)?;
    let support: Vec<Vec<usize>> =
        env.support().into_iter().map(|f| env_codec.decode(f)).collect();
    let mut realized = Matrix::zeros(ctx, out_codec.total(), col_codec.total());
    for b_flat in 0..out_codec.total() {
        let b_multi = out_codec.decode(b_flat);
        for col_flat in 0..col_codec.total() {
            let col_multi = col_codec.decode(col_flat);
            let mut acc = ctx.zero();
            'terms: for x_multi in &support {
                let mut term = ctx.one();
                for g in 0..order {
                    let entry =
                        conjugates[g].get(b_multi[g] * e + x_multi[g], col_multi[g]);
                    if entry.is_zero() {
                        continue 'terms;
                    }
                    term = term.mul(entry);
                }
                acc = acc.add(&term);
            }
            if !acc.is_zero() {
                *realized.get_mut(b_flat, col_flat) = acc;
            }
        }
    }
    Ok(CpmMorphism { pure_part: a.clone(), out_dim, env, realized })
}

/// The scalar a discarded state evaluates to, written through the norm
/// tower: N_{F/k}( sum_i N_{K/F}(v_i) ) with F the fixed field of Lambda.
pub fn nested_norm_formula(v: &[FieldElement], lambda: &Subgroup) -> Result<FieldElement> {
    let ctx = v
        .first()
        .map(|e| Arc::clone(e.context()))
        .ok_or_else(|| Error::DimensionMismatch("empty state".into()))?;
    let mut inner = ctx.zero();
    for vi in v {
        inner = inner.add(&norm_rel(vi, lambda)?);
    }
    let t = Transversal::canonical(lambda);
    transversal_norm(&inner, &t)
}

/// An object of the idempotent-split theory: a complete folding together
/// with the decoherence idempotent of a subgroup.
#[derive(Debug, Clone)]
pub struct DecoheredObject {
    folded: FoldedObject,
    subgroup: Subgroup,
    idempotent: Matrix,
}

impl DecoheredObject {
    pub fn new(
        ctx: &Arc<FieldContext>,
        base_dim: usize,
        subgroup: &Subgroup,
    ) -> Result<DecoheredObject> {
        let group = Arc::clone(subgroup.parent());
        let folded = FoldedObject::complete(base_dim, &group)?;
        let idempotent = decohere_map(ctx, base_dim, &group, subgroup)?;
        Ok(DecoheredObject { folded, subgroup: subgroup.clone(), idempotent })
    }

    pub fn folded(&self) -> &FoldedObject {
        &self.folded
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn idempotent(&self) -> &Matrix {
        &self.idempotent
    }

    pub fn base_dim(&self) -> usize {
        self.folded.base_dim()
    }

    pub fn total_dim(&self) -> usize {
        self.folded.total_dim()
    }

    /// Compressed dimension `n^[G:H]`.
    pub fn compressed_dim(&self) -> usize {
        let cosets = self.subgroup.left_cosets().len();
        self.folded.base_dim().pow(cosets as u32)
    }

    /// Flat folded indices of the coset-constant multi-indices, enumerated
    /// as value tuples over the transversal (coset-major canonical order).
    pub fn constant_index_map(&self) -> Vec<usize> {
        let group = self.subgroup.parent();
        let order = group.order();
        let n = self.folded.base_dim();
        let ids = coset_ids(&self.subgroup);
        let cosets = self.subgroup.left_cosets().len();
        let tuple_codec = IndexCodec::uniform(n, cosets);
        let full_codec = IndexCodec::uniform(n, order);
        (0..tuple_codec.total())
            .map(|t| {
                let z = tuple_codec.decode(t);
                let full: Vec<usize> = (0..order).map(|g| z[ids[g]]).collect();
                full_codec.encode(&full)
            })
            .collect()
    }
}

/// Compresses a decohered morphism onto the coset-constant index tuples.
/// Requires dec_dst . M . dec_src = M, which for the diagonal idempotents
/// means M vanishes outside the constant rows and columns.
pub fn compress_decohered(
    m: &Matrix,
    src: &DecoheredObject,
    dst: &DecoheredObject,
) -> Result<Matrix> {
    if m.rows() != dst.total_dim() || m.cols() != src.total_dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} morphism between folded dims {} and {}",
            m.rows(),
            m.cols(),
            dst.total_dim(),
            src.total_dim()
        )));
    }
    let row_keep: Vec<bool> = (0..m.rows())
        .map(|i| !dst.idempotent.get(i, i).is_zero())
        .collect();
    let col_keep: Vec<bool> = (0..m.cols())
        .map(|j| !src.idempotent.get(j, j).is_zero())
        .collect();
    #[allow(clippy::needless_range_loop)]
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !(row_keep[i] && col_keep[j]) && !m.get(i, j).is_zero() {
                return Err(Error::NotDecohered);
            }
        }
    }
    let rows = dst.constant_index_map();
    let cols = src.constant_index_map();
    Ok(m.gather(&rows, &cols))
}

/// A scalar-semiring claim for an element: membership in the whole fixed
/// field of H, or in its totally positive part.
#[derive(Debug, Clone)]
pub enum SemiringClaim<'a> {
    WholeField(&'a Subgroup),
    TotallyPositive(&'a Subgroup),
}

pub fn semiring_membership(a: &FieldElement, claim: &SemiringClaim<'_>) -> Result<bool> {
    match claim {
        SemiringClaim::WholeField(h) => is_fixed_by(a, h),
        SemiringClaim::TotallyPositive(h) => {
            Ok(is_fixed_by(a, h)? && is_totally_positive(a)?)
        }
    }
}

/// Hilbert-90 style phase sigma(b)/b; its norm over <g> is 1.
pub fn hilbert90_phase(b: &FieldElement, g: &crate::group::GroupElement) -> Result<FieldElement> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    apply_aut(b, g)?.div(b)
}

/// All context elements with coordinates of height at most `height`.
/// Contexts whose full coordinate grid is too large are enumerated over
/// vectors with at most two nonzero coordinates instead.
pub fn elements_of_height(ctx: &Arc<FieldContext>, height: u32) -> Vec<FieldElement> {
    use crate::rational::rationals_of_height;
    let d = ctx.degree();
    let pool = rationals_of_height(height);
    let full_count = (pool.len() as u128).checked_pow(d as u32);
    let mut out = Vec::new();
    match full_count {
        Some(c) if c <= 2_000_000 => {
            let mut coords = vec![crate::rational::Rational::from_integer(0.into()); d];
            fn rec(
                ctx: &Arc<FieldContext>,
                pool: &[crate::rational::Rational],
                coords: &mut Vec<crate::rational::Rational>,
                i: usize,
                out: &mut Vec<FieldElement>,
            ) {
                if i == coords.len() {
                    out.push(
                        crate::fields::element_from_coords(ctx, coords.clone())
                            .expect("coordinates fit"),
                    );
                    return;
                }
                for q in pool {
                    coords[i] = q.clone();
                    rec(ctx, pool, coords, i + 1, out);
                }
            }
            rec(ctx, &pool, &mut coords, 0, &mut out);
        }
        _ => {
            // sparse fallback: supports of size <= 2
            for i in 0..d {
                for qi in &pool {
                    if qi.is_zero() && i > 0 {
                        continue;
                    }
                    for j in (i + 1)..=d {
                        if j == d {
                            let mut coords =
                                vec![crate::rational::Rational::from_integer(0.into()); d];
                            coords[i] = qi.clone();
                            out.push(
                                crate::fields::element_from_coords(ctx, coords)
                                    .expect("coordinates fit"),
                            );
                        } else {
                            for qj in &pool {
                                if qj.is_zero() {
                                    continue;
                                }
                                let mut coords =
                                    vec![crate::rational::Rational::from_integer(0.into()); d];
                                coords[i] = qi.clone();
                                coords[j] = qj.clone();
                                out.push(
                                    crate::fields::element_from_coords(ctx, coords)
                                        .expect("coordinates fit"),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Bounded brute-force search for target = sum_i N_H(a_i) over elements of
/// bounded coordinate height with at most `term_bound` terms. Not-found is
/// a value, not an error.
pub fn sum_of_norms_search(
    target: &FieldElement,
    h: &Subgroup,
    height_bound: u32,
    term_bound: u32,
) -> Result<Option<Vec<FieldElement>>> {
    if target.is_zero() {
        return Ok(Some(vec![]));
    }
    let ctx = Arc::clone(target.context());
    let candidates = elements_of_height(&ctx, height_bound);
    // distinct norm values with a representative element each
    let mut values: Vec<(FieldElement, FieldElement)> = Vec::new();
    for a in candidates {
        let v = norm_rel(&a, h)?;
        if v.is_zero() {
            continue;
        }
        if !values.iter().any(|(w, _)| *w == v) {
            values.push((v, a));
        }
    }
    // When everything in sight is rational, order descending and allow
    // magnitude pruning.
    let rational_mode = target.to_rational().is_some()
        && values.iter().all(|(v, _)| v.to_rational().is_some());
    if rational_mode {
        values.sort_by(|(a, _), (b, _)| {
            b.to_rational().unwrap().cmp(&a.to_rational().unwrap())
        });
    }
    let all_positive = rational_mode
        && values
            .iter()
            .all(|(v, _)| v.to_rational().unwrap() >= num_traits::Zero::zero());
    for terms in 1..=term_bound {
        let mut failed: HashSet<(String, usize, u32)> = HashSet::new();
        if let Some(w) = dfs(target, &values, 0, terms, all_positive, &mut failed) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn remaining_key(e: &FieldElement) -> String {
    crate::fields::coords_to_strings(e).join(",")
}

fn dfs(
    remaining: &FieldElement,
    values: &[(FieldElement, FieldElement)],
    start: usize,
    terms_left: u32,
    all_positive: bool,
    failed: &mut HashSet<(String, usize, u32)>,
) -> Option<Vec<FieldElement>> {
    if remaining.is_zero() {
        return Some(vec![]);
    }
    if terms_left == 0 {
        return None;
    }
    let key = (remaining_key(remaining), start, terms_left);
    if failed.contains(&key) {
        return None;
    }
    if all_positive {
        if let Some(r) = remaining.to_rational() {
            if r < num_traits::Zero::zero() {
                return None;
            }
        }
    }
    for i in start..values.len() {
        let (v, rep) = &values[i];
        if all_positive {
            let rq = remaining.to_rational().unwrap();
            let vq = v.to_rational().unwrap();
            if vq > rq {
                continue; // sorted descending; smaller values follow
            }
        }
        let next = remaining.sub(v);
        if let Some(mut w) = dfs(&next, values, i, terms_left - 1, all_positive, failed) {
            w.push(rep.clone());
            return Some(w);
        }
    }
    failed.insert(key);
    None
}

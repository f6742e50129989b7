//! Galois groups as explicit finite groups: elements, multiplication tables,
//! subgroup lattices, cosets, transversals and quotients.
//!
//! Every group is table-driven after construction. The canonical element
//! order (units ascending, Frobenius powers by exponent, sextic words by
//! (tau, sigma) exponent, quotient cosets by least representative) fixes all
//! downstream coset, transversal and folded-index orders, which keeps every
//! output reproducible.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::{ContextOps, FieldElement};
use crate::poly::RationalPolynomial;

/// A concrete field automorphism, self-describing enough to be applied to
/// elements of the matching context.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    /// Unit k mod n acting on a cyclotomic context by zeta -> zeta^k.
    Unit { n: u64, k: u64 },
    /// Frobenius power t -> t^(p^j) on GF(p^m).
    Frobenius { p: u64, m: u32, j: u32 },
    /// The nontrivial automorphism of Q(sqrt d) when `flip` holds.
    QuadConj { d: i64, flip: bool },
    /// Word tau^t sigma^s in the sextic field's automorphism group.
    S3Word { tau: u8, sigma: u8 },
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Unit { k, .. } => *k == 1,
            GroupElement::Frobenius { j, .. } => *j == 0,
            GroupElement::QuadConj { flip, .. } => !flip,
            GroupElement::S3Word { tau, sigma } => *tau == 0 && *sigma == 0,
        }
    }

    /// Composition self . other (apply `other` first). None on kind mismatch.
    pub fn compose(&self, other: &GroupElement) -> Option<GroupElement> {
        match (self, other) {
            (GroupElement::Unit { n, k }, GroupElement::Unit { n: n2, k: k2 }) if n == n2 => {
                Some(GroupElement::Unit { n: *n, k: k * k2 % n })
            }
            (
                GroupElement::Frobenius { p, m, j },
                GroupElement::Frobenius { p: p2, m: m2, j: j2 },
            ) if p == p2 && m == m2 => {
                Some(GroupElement::Frobenius { p: *p, m: *m, j: (j + j2) % m })
            }
            (GroupElement::QuadConj { d, flip }, GroupElement::QuadConj { d: d2, flip: f2 })
                if d == d2 =>
            {
                Some(GroupElement::QuadConj { d: *d, flip: flip ^ f2 })
            }
            (GroupElement::S3Word { tau: a, sigma: b }, GroupElement::S3Word { tau: c, sigma: d }) => {
                // sigma tau = tau^2 sigma, so tau^a sigma^b tau^c sigma^d
                // = tau^(a + c*2^b) sigma^(b+d)
                let shift = if *b == 1 { (2 * c) % 3 } else { c % 3 };
                Some(GroupElement::S3Word {
                    tau: (a + shift) % 3,
                    sigma: (b + d) % 2,
                })
            }
            _ => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Unit { k, .. } => write!(f, "{k}"),
            GroupElement::Frobenius { j, .. } => write!(f, "F^{j}"),
            GroupElement::QuadConj { flip, .. } => {
                write!(f, "{}", if *flip { "conj" } else { "id" })
            }
            GroupElement::S3Word { tau, sigma } => match (tau, sigma) {
                (0, 0) => write!(f, "e"),
                (t, 0) => write!(f, "t^{t}"),
                (0, 1) => write!(f, "s"),
                (t, _) => write!(f, "t^{t}s"),
            },
        }
    }
}

/// Finite group with elements in canonical order and a full operation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisGroup {
    elements: Vec<GroupElement>,
    table: Vec<usize>,
    inv: Vec<usize>,
}

impl GaloisGroup {
    fn from_elements(mut elements: Vec<GroupElement>) -> Self {
        elements.sort();
        elements.dedup();
        let n = elements.len();
        let mut table = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = elements[i]
                    .compose(&elements[j])
                    .expect("group elements share a kind");
                let idx = elements
                    .iter()
                    .position(|e| *e == prod)
                    .expect("element set closed under composition");
                table[i * n + j] = idx;
            }
        }
        let group = GaloisGroup { elements, table, inv: vec![] };
        group.with_inverses()
    }

    fn from_parts(elements: Vec<GroupElement>, table: Vec<usize>) -> Self {
        let group = GaloisGroup { elements, table, inv: vec![] };
        group.with_inverses()
    }

    fn with_inverses(mut self) -> Self {
        let n = self.elements.len();
        assert!(self.elements[0].is_identity(), "identity must sort first");
        let mut inv = vec![usize::MAX; n];
        for (i, slot) in inv.iter_mut().enumerate() {
            for j in 0..n {
                if self.table[i * n + j] == 0 {
                    *slot = j;
                }
            }
        }
        assert!(inv.iter().all(|&i| i != usize::MAX), "every element has an inverse");
        self.inv = inv;
        self
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order() + j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.elements.iter().position(|e| e == g)
    }

    /// Order of the cyclic subgroup generated by element `i`.
    pub fn element_order(&self, i: usize) -> usize {
        let mut cur = i;
        let mut ord = 1;
        while cur != 0 {
            cur = self.op(cur, i);
            ord += 1;
        }
        ord
    }
}

/// (Z/nZ)^x acting on the conductor-n cyclotomic field.
pub fn unit_group(n: u64) -> Result<Arc<GaloisGroup>> {
    if n < 2 {
        return Err(Error::InvalidConductor(n));
    }
    let elements = (1..n)
        .filter(|k| num_integer::gcd(*k, n) == 1)
        .map(|k| GroupElement::Unit { n, k })
        .collect();
    Ok(Arc::new(GaloisGroup::from_elements(elements)))
}

/// Cyclic Frobenius group of GF(p^m) over GF(p).
pub fn frobenius_group(p: u64, m: u32) -> Arc<GaloisGroup> {
    let elements = (0..m).map(|j| GroupElement::Frobenius { p, m, j }).collect();
    Arc::new(GaloisGroup::from_elements(elements))
}

/// C2 for the quadratic field Q(sqrt d).
pub fn quadratic_group(d: i64) -> Arc<GaloisGroup> {
    Arc::new(GaloisGroup::from_elements(vec![
        GroupElement::QuadConj { d, flip: false },
        GroupElement::QuadConj { d, flip: true },
    ]))
}

/// S3 for the sextic field.
pub fn s3_group() -> Arc<GaloisGroup> {
    let mut elements = Vec::new();
    for tau in 0..3 {
        for sigma in 0..2 {
            elements.push(GroupElement::S3Word { tau, sigma });
        }
    }
    Arc::new(GaloisGroup::from_elements(elements))
}

/// Subgroup as a sorted set of element indices into the parent group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<GaloisGroup>,
    members: Vec<usize>,
}

impl Subgroup {
    pub fn generated(parent: &Arc<GaloisGroup>, generators: &[usize]) -> Subgroup {
        let mut members = vec![parent.identity()];
        let mut frontier = vec![parent.identity()];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let y = parent.op(x, g);
                if !members.contains(&y) {
                    members.push(y);
                    frontier.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup { parent: Arc::clone(parent), members }
    }

    pub fn trivial(parent: &Arc<GaloisGroup>) -> Subgroup {
        Subgroup { parent: Arc::clone(parent), members: vec![parent.identity()] }
    }

    pub fn full(parent: &Arc<GaloisGroup>) -> Subgroup {
        Subgroup { parent: Arc::clone(parent), members: (0..parent.order()).collect() }
    }

    pub fn parent(&self) -> &Arc<GaloisGroup> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    pub fn elements(&self) -> impl Iterator<Item = &GroupElement> + '_ {
        self.members.iter().map(|&i| self.parent.element(i))
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_normal(&self) -> bool {
        for g in 0..self.parent.order() {
            let gi = self.parent.inverse(g);
            for &h in &self.members {
                let conj = self.parent.op(self.parent.op(g, h), gi);
                if !self.contains(conj) {
                    return false;
                }
            }
        }
        true
    }

    /// Left cosets gH, each sorted, listed by ascending least element.
    /// The identity coset (H itself) always comes first.
    pub fn left_cosets(&self) -> Vec<Vec<usize>> {
        let n = self.parent.order();
        let mut seen = vec![false; n];
        let mut cosets = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = self.members.iter().map(|&h| self.parent.op(g, h)).collect();
            coset.sort_unstable();
            for &x in &coset {
                seen[x] = true;
            }
            cosets.push(coset);
        }
        cosets
    }

    /// Index of the left coset of `g` in the `left_cosets` order.
    pub fn coset_of(&self, g: usize) -> usize {
        self.left_cosets()
            .iter()
            .position(|c| c.contains(&g))
            .expect("every element lies in a coset")
    }

    /// The subgroup as a standalone group (restricted operation table).
    pub fn as_group(&self) -> Arc<GaloisGroup> {
        let elements: Vec<GroupElement> =
            self.members.iter().map(|&i| self.parent.element(i).clone()).collect();
        let k = self.members.len();
        let mut table = vec![0usize; k * k];
        for a in 0..k {
            for b in 0..k {
                let prod = self.parent.op(self.members[a], self.members[b]);
                table[a * k + b] = self
                    .members
                    .binary_search(&prod)
                    .expect("subgroup closed under the operation");
            }
        }
        Arc::new(GaloisGroup::from_parts(elements, table))
    }
}

/// Least subgroup containing both operands.
pub fn join(h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    if h.parent != k.parent {
        return Err(Error::ParentMismatch);
    }
    let gens: Vec<usize> = h.members.iter().chain(k.members.iter()).copied().collect();
    Ok(Subgroup::generated(&h.parent, &gens))
}

/// Intersection of subgroups.
pub fn meet(h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    if h.parent != k.parent {
        return Err(Error::ParentMismatch);
    }
    let members: Vec<usize> = h.members.iter().copied().filter(|&i| k.contains(i)).collect();
    Ok(Subgroup { parent: Arc::clone(&h.parent), members })
}

/// All subgroups of a finite group, with the inclusion order and exact
/// join/meet tables.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    parent: Arc<GaloisGroup>,
    subgroups: Vec<Subgroup>,
    inclusion: Vec<Vec<bool>>,
    join_table: Vec<Vec<usize>>,
    meet_table: Vec<Vec<usize>>,
}

pub const DEFAULT_SUBGROUP_BOUND: usize = 48;

pub fn all_subgroups(parent: &Arc<GaloisGroup>) -> Result<SubgroupLattice> {
    all_subgroups_bounded(parent, DEFAULT_SUBGROUP_BOUND)
}

/// Enumerates subgroups by closing each known subgroup with one more
/// generator until a fixpoint; every subgroup is reachable this way.
pub fn all_subgroups_bounded(parent: &Arc<GaloisGroup>, bound: usize) -> Result<SubgroupLattice> {
    if parent.order() > bound {
        return Err(Error::BoundExceeded(parent.order(), bound));
    }
    let mut found = vec![Subgroup::trivial(parent)];
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        let current = found[i].clone();
        for g in 0..parent.order() {
            if current.contains(g) {
                continue;
            }
            let mut gens = current.members.clone();
            gens.push(g);
            let bigger = Subgroup::generated(parent, &gens);
            if !found.contains(&bigger) {
                found.push(bigger);
                frontier.push(found.len() - 1);
            }
        }
    }
    found.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    let m = found.len();
    let mut inclusion = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            inclusion[i][j] = found[i].members.iter().all(|x| found[j].contains(*x));
        }
    }
    let mut join_table = vec![vec![0usize; m]; m];
    let mut meet_table = vec![vec![0usize; m]; m];
    for i in 0..m {
        for j in 0..m {
            let jn = join(&found[i], &found[j])?;
            let mt = meet(&found[i], &found[j])?;
            join_table[i][j] = found.iter().position(|s| *s == jn).expect("join is a subgroup");
            meet_table[i][j] = found.iter().position(|s| *s == mt).expect("meet is a subgroup");
        }
    }
    Ok(SubgroupLattice { parent: Arc::clone(parent), subgroups: found, inclusion, join_table, meet_table })
}

impl SubgroupLattice {
    pub fn parent(&self) -> &Arc<GaloisGroup> {
        &self.parent
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn includes(&self, i: usize, j: usize) -> bool {
        self.inclusion[i][j]
    }

    pub fn join_of(&self, i: usize, j: usize) -> usize {
        self.join_table[i][j]
    }

    pub fn meet_of(&self, i: usize, j: usize) -> usize {
        self.meet_table[i][j]
    }

    /// Covering relation edges (i, j): i strictly below j with nothing between.
    pub fn covering_edges(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        let mut edges = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if i == j || !self.inclusion[i][j] {
                    continue;
                }
                let strict_between = (0..m).any(|k| {
                    k != i && k != j && self.inclusion[i][k] && self.inclusion[k][j]
                });
                if !strict_between {
                    edges.push((i, j));
                }
            }
        }
        edges
    }
}

/// Left transversal: exactly one representative per left coset,
/// identity first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    subgroup: Subgroup,
    reps: Vec<usize>,
}

impl Transversal {
    /// Canonical choice: the least element of each coset, ascending.
    pub fn canonical(subgroup: &Subgroup) -> Transversal {
        let reps = subgroup.left_cosets().iter().map(|c| c[0]).collect();
        Transversal { subgroup: subgroup.clone(), reps }
    }

    /// User-supplied representatives; validated to hit each coset once and
    /// to start at the identity.
    pub fn new(subgroup: &Subgroup, reps: Vec<usize>) -> Result<Transversal> {
        let cosets = subgroup.left_cosets();
        if reps.len() != cosets.len() {
            return Err(Error::BadTransversal(format!(
                "{} representatives for {} cosets",
                reps.len(),
                cosets.len()
            )));
        }
        if reps.first() != Some(&subgroup.parent.identity()) {
            return Err(Error::BadTransversal("first representative must be the identity".into()));
        }
        let mut hit = vec![false; cosets.len()];
        for &r in &reps {
            if r >= subgroup.parent.order() {
                return Err(Error::BadTransversal(format!("index {r} out of range")));
            }
            let c = subgroup.coset_of(r);
            if hit[c] {
                return Err(Error::BadTransversal("two representatives share a coset".into()));
            }
            hit[c] = true;
        }
        Ok(Transversal { subgroup: subgroup.clone(), reps })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn rep_elements(&self) -> impl Iterator<Item = &GroupElement> + '_ {
        self.reps.iter().map(|&i| self.subgroup.parent.element(i))
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Canonical left transversal of H in G.
pub fn left_transversal(g: &Arc<GaloisGroup>, h: &Subgroup) -> Transversal {
    debug_assert!(h.parent().as_ref() == g.as_ref());
    Transversal::canonical(h)
}

/// Folding data (G, H, eta, T) with eta fixed to the identity family: the
/// autofunctors are identity-on-objects here, so no nontrivial eta is needed.
#[derive(Debug, Clone)]
pub struct FoldingData {
    group: Arc<GaloisGroup>,
    subgroup: Subgroup,
    transversal: Transversal,
    /// coset-major position (t-major, h-minor) -> canonical index of t*h in G
    regroup: Vec<usize>,
}

impl FoldingData {
    pub fn new(group: &Arc<GaloisGroup>, subgroup: &Subgroup, transversal: Transversal) -> Result<FoldingData> {
        if subgroup.parent().as_ref() != group.as_ref() {
            return Err(Error::ParentMismatch);
        }
        if transversal.subgroup() != subgroup {
            return Err(Error::BadTransversal("transversal does not match the subgroup".into()));
        }
        let mut regroup = Vec::with_capacity(group.order());
        for &t in transversal.reps() {
            for &h in subgroup.members() {
                regroup.push(group.op(t, h));
            }
        }
        Ok(FoldingData {
            group: Arc::clone(group),
            subgroup: subgroup.clone(),
            transversal,
            regroup,
        })
    }

    pub fn canonical(group: &Arc<GaloisGroup>, subgroup: &Subgroup) -> Result<FoldingData> {
        FoldingData::new(group, subgroup, Transversal::canonical(subgroup))
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    /// Cached relabeling from coset-major tensor positions to canonical
    /// group order.
    pub fn regroup_map(&self) -> &[usize] {
        &self.regroup
    }
}

/// Quotient group G/H for normal H. Elements are the least coset
/// representatives; the table is induced coset multiplication, so the
/// element list is authoritative only together with the table.
pub fn quotient_group(g: &Arc<GaloisGroup>, h: &Subgroup) -> Result<Arc<GaloisGroup>> {
    if h.parent().as_ref() != g.as_ref() {
        return Err(Error::ParentMismatch);
    }
    if !h.is_normal() {
        return Err(Error::NotNormal);
    }
    let cosets = h.left_cosets();
    let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let coset_of = |x: usize| -> usize {
        cosets.iter().position(|c| c.contains(&x)).expect("cosets partition G")
    };
    let k = reps.len();
    let mut table = vec![0usize; k * k];
    for a in 0..k {
        for b in 0..k {
            table[a * k + b] = coset_of(g.op(reps[a], reps[b]));
        }
    }
    let elements = reps.iter().map(|&r| g.element(r).clone()).collect();
    Ok(Arc::new(GaloisGroup::from_parts(elements, table)))
}

/// True iff `a` is fixed by every automorphism in H.
pub fn is_fixed_by(a: &FieldElement, h: &Subgroup) -> Result<bool> {
    for e in h.elements() {
        if crate::fields::apply_aut(a, e)? != *a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Primitive element and minimal polynomial of the fixed field of H.
///
/// The first candidate is the Gaussian period (the H-orbit sum of the
/// context generator); when that degenerates, orbit sums of powers of the
/// generator and small shifted combinations are tried in order.
pub fn fixed_field(h: &Subgroup) -> Result<(FieldElement, RationalPolynomial)> {
    let ctx = crate::fields::context_for_group(h.parent())?;
    let target_degree = h.index();
    let gen = ctx.generator();
    let period_of = |x: &FieldElement| -> Result<FieldElement> {
        let mut acc = ctx.zero();
        for e in h.elements() {
            acc = acc.add(&crate::fields::apply_aut(x, e)?);
        }
        Ok(acc)
    };
    let mut candidates: Vec<FieldElement> = Vec::new();
    let mut power = gen.clone();
    for _ in 0..ctx.degree().max(2) * 2 {
        candidates.push(period_of(&power)?);
        power = power.mul(&gen);
    }
    // shifted combinations as a last resort
    let base: Vec<FieldElement> = candidates.clone();
    for i in 0..base.len() {
        for j in (i + 1)..base.len() {
            candidates.push(base[i].add(&base[j]));
        }
    }
    for cand in &candidates {
        let mp = crate::fields::min_poly(cand)?;
        if mp.degree() == Some(target_degree) {
            return Ok((cand.clone(), mp));
        }
    }
    Err(Error::SearchExhausted(candidates.len()))
}

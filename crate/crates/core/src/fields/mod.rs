//! Exact arithmetic for the supported field contexts, with automorphisms,
//! norms, minimal polynomials and total-positivity decisions.
//!
//! Supported contexts: cyclotomic Q(zeta_n), quadratic Q(sqrt d), finite
//! GF(p^m) and the sextic splitting field of x^3 - 2. Elements are exact
//! coordinate vectors over the context basis, canonically reduced, so equal
//! values always have identical coordinates.

mod cyclotomic;
mod finite;
mod quadratic;
mod sextic;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use cyclotomic::CyclotomicContext;
pub use finite::FiniteFieldContext;
pub use quadratic::QuadraticContext;
pub use sextic::SexticContext;

use crate::error::{Error, Result};
use crate::group::{GaloisGroup, GroupElement, Subgroup, Transversal};
use crate::matrix::Matrix;
use crate::poly::{sturm_root_count, Bound, QPoly};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone)]
pub enum FieldContext {
    Cyclotomic(CyclotomicContext),
    Quadratic(QuadraticContext),
    Finite(FiniteFieldContext),
    SexticS3(SexticContext),
}

/// Serializable description of a field context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Cyclotomic { n: u64 },
    Quadratic { d: i64 },
    Finite { p: u64, m: u32 },
    SexticS3,
}

pub fn cyc_context(n: u64) -> Result<Arc<FieldContext>> {
    Ok(Arc::new(FieldContext::Cyclotomic(CyclotomicContext::new(n)?)))
}

pub fn quad_context(d: i64) -> Result<Arc<FieldContext>> {
    Ok(Arc::new(FieldContext::Quadratic(QuadraticContext::new(d)?)))
}

pub fn ff_context(p: u64, m: u32) -> Result<Arc<FieldContext>> {
    Ok(Arc::new(FieldContext::Finite(FiniteFieldContext::new(p, m)?)))
}

pub fn sextic_context() -> Arc<FieldContext> {
    Arc::new(FieldContext::SexticS3(SexticContext::new()))
}

pub fn context_from_spec(spec: &FieldSpec) -> Result<Arc<FieldContext>> {
    match spec {
        FieldSpec::Cyclotomic { n } => cyc_context(*n),
        FieldSpec::Quadratic { d } => quad_context(*d),
        FieldSpec::Finite { p, m } => ff_context(*p, *m),
        FieldSpec::SexticS3 => Ok(sextic_context()),
    }
}

/// Rebuilds the context a group acts on, from the self-describing elements.
pub fn context_for_group(group: &Arc<GaloisGroup>) -> Result<Arc<FieldContext>> {
    match group.element(0) {
        GroupElement::Unit { n, .. } => cyc_context(*n),
        GroupElement::QuadConj { d, .. } => quad_context(*d),
        GroupElement::Frobenius { p, m, .. } => ff_context(*p, *m),
        GroupElement::S3Word { .. } => Ok(sextic_context()),
    }
}

impl FieldContext {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldContext::Cyclotomic(c) => FieldSpec::Cyclotomic { n: c.conductor() },
            FieldContext::Quadratic(c) => FieldSpec::Quadratic { d: c.radicand() },
            FieldContext::Finite(c) => FieldSpec::Finite {
                p: c.characteristic(),
                m: c.extension_degree(),
            },
            FieldContext::SexticS3(_) => FieldSpec::SexticS3,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            FieldContext::Cyclotomic(c) => c.degree(),
            FieldContext::Quadratic(_) => 2,
            FieldContext::Finite(c) => c.extension_degree() as usize,
            FieldContext::SexticS3(_) => sextic::SEXTIC_DEGREE,
        }
    }

    pub fn is_characteristic_zero(&self) -> bool {
        !matches!(self, FieldContext::Finite(_))
    }

    pub fn galois_group(&self) -> &Arc<GaloisGroup> {
        match self {
            FieldContext::Cyclotomic(c) => c.group(),
            FieldContext::Quadratic(c) => c.group(),
            FieldContext::Finite(c) => c.group(),
            FieldContext::SexticS3(c) => c.group(),
        }
    }

    /// The involution acting as conjugation, when the context has one:
    /// zeta -> zeta^(-1), sqrt d -> -sqrt d (identity for real d), the
    /// half-degree Frobenius, or sigma on the sextic field. Identity for
    /// contexts that are already fixed by conjugation.
    pub fn conjugation(&self) -> Option<GroupElement> {
        match self {
            FieldContext::Cyclotomic(c) => {
                let n = c.conductor();
                Some(GroupElement::Unit { n, k: if n > 2 { n - 1 } else { 1 } })
            }
            FieldContext::Quadratic(c) => {
                let d = c.radicand();
                Some(GroupElement::QuadConj { d, flip: d < 0 })
            }
            FieldContext::Finite(c) => {
                let (p, m) = (c.characteristic(), c.extension_degree());
                if m == 1 {
                    Some(GroupElement::Frobenius { p, m, j: 0 })
                } else if m % 2 == 0 {
                    Some(GroupElement::Frobenius { p, m, j: m / 2 })
                } else {
                    None
                }
            }
            FieldContext::SexticS3(_) => Some(GroupElement::S3Word { tau: 0, sigma: 1 }),
        }
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.spec() == other.spec()
    }
}

impl Eq for FieldContext {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Coords {
    Rat(Vec<Rational>),
    Mod(Vec<u64>),
}

/// Exact field element: a context plus canonically reduced coordinates.
#[derive(Debug, Clone)]
pub struct FieldElement {
    ctx: Arc<FieldContext>,
    coords: Coords,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

// constructors hang off the context, so the factory names keep `&self`
#[allow(clippy::wrong_self_convention)]
pub trait ContextOps {
    fn zero(&self) -> FieldElement;
    fn one(&self) -> FieldElement;
    fn generator(&self) -> FieldElement;
    fn from_rational(&self, q: &Rational) -> Result<FieldElement>;
    fn from_integer(&self, n: i64) -> FieldElement;
    fn basis_element(&self, i: usize) -> FieldElement;
}

impl ContextOps for Arc<FieldContext> {
    fn zero(&self) -> FieldElement {
        let coords = match self.as_ref() {
            FieldContext::Finite(c) => Coords::Mod(vec![0; c.extension_degree() as usize]),
            _ => Coords::Rat(vec![Rational::zero(); self.degree()]),
        };
        FieldElement { ctx: Arc::clone(self), coords }
    }

    fn one(&self) -> FieldElement {
        self.from_integer(1)
    }

    fn generator(&self) -> FieldElement {
        let coords = match self.as_ref() {
            FieldContext::Cyclotomic(c) => Coords::Rat(c.reduce(&QPoly::monomial(1))),
            FieldContext::Quadratic(_) => {
                Coords::Rat(vec![Rational::zero(), Rational::one()])
            }
            FieldContext::Finite(c) => Coords::Mod(c.reduce(&[0, 1])),
            FieldContext::SexticS3(c) => Coords::Rat(c.generator_coords()),
        };
        FieldElement { ctx: Arc::clone(self), coords }
    }

    fn from_rational(&self, q: &Rational) -> Result<FieldElement> {
        match self.as_ref() {
            FieldContext::Finite(c) => {
                let p = c.characteristic();
                let num = mod_bigint(q.numer(), p);
                let den = mod_bigint(q.denom(), p);
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let mut coords = vec![0u64; c.extension_degree() as usize];
                let den_elem = {
                    let mut v = coords.clone();
                    v[0] = den;
                    v
                };
                let den_inv = c.inv(&den_elem)?;
                let mut num_elem = coords.clone();
                num_elem[0] = num;
                coords = c.mul(&num_elem, &den_inv);
                Ok(FieldElement { ctx: Arc::clone(self), coords: Coords::Mod(coords) })
            }
            _ => {
                let mut v = vec![Rational::zero(); self.degree()];
                v[0] = q.clone();
                Ok(FieldElement { ctx: Arc::clone(self), coords: Coords::Rat(v) })
            }
        }
    }

    fn from_integer(&self, n: i64) -> FieldElement {
        self.from_rational(&Rational::from_integer(BigInt::from(n)))
            .expect("integers embed in every context")
    }

    fn basis_element(&self, i: usize) -> FieldElement {
        assert!(i < self.degree());
        match self.as_ref() {
            FieldContext::Finite(c) => {
                let mut v = vec![0u64; c.extension_degree() as usize];
                v[i] = 1;
                FieldElement { ctx: Arc::clone(self), coords: Coords::Mod(v) }
            }
            _ => {
                let mut v = vec![Rational::zero(); self.degree()];
                v[i] = Rational::one();
                FieldElement { ctx: Arc::clone(self), coords: Coords::Rat(v) }
            }
        }
    }
}

fn mod_bigint(x: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let r = ((x % &p_big) + &p_big) % &p_big;
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Builds an element from rational coordinates over the context basis.
pub fn element_from_coords(ctx: &Arc<FieldContext>, coords: Vec<Rational>) -> Result<FieldElement> {
    if coords.len() != ctx.degree() {
        return Err(Error::DimensionMismatch(format!(
            "{} coordinates for a degree-{} context",
            coords.len(),
            ctx.degree()
        )));
    }
    match ctx.as_ref() {
        FieldContext::Finite(c) => {
            let p = c.characteristic();
            let mut out = Vec::with_capacity(coords.len());
            for q in &coords {
                if !q.denom().is_one() {
                    let den = mod_bigint(q.denom(), p);
                    if den == 0 {
                        return Err(Error::DivisionByZero);
                    }
                }
                let num = mod_bigint(q.numer(), p);
                let den = mod_bigint(q.denom(), p);
                let den_inv = if den == 1 {
                    1
                } else {
                    let mut v = vec![0u64; c.extension_degree() as usize];
                    v[0] = den;
                    c.inv(&v)?[0]
                };
                out.push((num as u128 * den_inv as u128 % p as u128) as u64);
            }
            Ok(FieldElement { ctx: Arc::clone(ctx), coords: Coords::Mod(c.reduce(&out)) })
        }
        _ => Ok(FieldElement { ctx: Arc::clone(ctx), coords: Coords::Rat(coords) }),
    }
}

/// Builds a finite-field element from residues.
pub fn element_from_residues(ctx: &Arc<FieldContext>, coords: Vec<u64>) -> Result<FieldElement> {
    match ctx.as_ref() {
        FieldContext::Finite(c) => {
            if coords.len() != c.extension_degree() as usize {
                return Err(Error::DimensionMismatch(format!(
                    "{} residues for GF({}^{})",
                    coords.len(),
                    c.characteristic(),
                    c.extension_degree()
                )));
            }
            Ok(FieldElement { ctx: Arc::clone(ctx), coords: Coords::Mod(c.reduce(&coords)) })
        }
        _ => Err(Error::ContextMismatch),
    }
}

impl FieldElement {
    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn same_context(&self, other: &FieldElement) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx
    }

    fn check_context(&self, other: &FieldElement) {
        assert!(self.same_context(other), "field elements from different contexts");
    }

    pub fn is_zero(&self) -> bool {
        match &self.coords {
            Coords::Rat(v) => v.iter().all(|c| c.is_zero()),
            Coords::Mod(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ctx.one()
    }

    pub fn rat_coords(&self) -> &[Rational] {
        match &self.coords {
            Coords::Rat(v) => v,
            Coords::Mod(_) => panic!("finite-field element has residue coordinates"),
        }
    }

    pub fn residue_coords(&self) -> &[u64] {
        match &self.coords {
            Coords::Mod(v) => v,
            Coords::Rat(_) => panic!("characteristic-zero element has rational coordinates"),
        }
    }

    /// Some(q) when the element is the embedded rational q (char 0 only).
    pub fn to_rational(&self) -> Option<Rational> {
        match &self.coords {
            Coords::Rat(v) if v[1..].iter().all(|c| c.is_zero()) => Some(v[0].clone()),
            _ => None,
        }
    }

    /// Some(r) when the element is the embedded prime-field residue r.
    pub fn to_residue(&self) -> Option<u64> {
        match &self.coords {
            Coords::Mod(v) if v[1..].iter().all(|&c| c == 0) => Some(v[0]),
            _ => None,
        }
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.check_context(other);
        let coords = match (&self.coords, &other.coords) {
            (Coords::Rat(a), Coords::Rat(b)) => {
                Coords::Rat(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Coords::Mod(a), Coords::Mod(b)) => match self.ctx.as_ref() {
                FieldContext::Finite(c) => Coords::Mod(c.add(a, b)),
                _ => unreachable!(),
            },
            _ => unreachable!("coordinates match the context kind"),
        };
        FieldElement { ctx: Arc::clone(&self.ctx), coords }
    }

    pub fn neg(&self) -> FieldElement {
        let coords = match &self.coords {
            Coords::Rat(a) => Coords::Rat(a.iter().map(|x| -x.clone()).collect()),
            Coords::Mod(a) => match self.ctx.as_ref() {
                FieldContext::Finite(c) => Coords::Mod(c.neg(a)),
                _ => unreachable!(),
            },
        };
        FieldElement { ctx: Arc::clone(&self.ctx), coords }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.check_context(other);
        let coords = match (&self.coords, &other.coords, self.ctx.as_ref()) {
            (Coords::Rat(a), Coords::Rat(b), FieldContext::Cyclotomic(c)) => {
                Coords::Rat(c.mul(a, b))
            }
            (Coords::Rat(a), Coords::Rat(b), FieldContext::Quadratic(c)) => {
                Coords::Rat(c.mul(a, b))
            }
            (Coords::Rat(a), Coords::Rat(b), FieldContext::SexticS3(c)) => {
                Coords::Rat(c.mul(a, b))
            }
            (Coords::Mod(a), Coords::Mod(b), FieldContext::Finite(c)) => Coords::Mod(c.mul(a, b)),
            _ => unreachable!("coordinates match the context kind"),
        };
        FieldElement { ctx: Arc::clone(&self.ctx), coords }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let coords = match (&self.coords, self.ctx.as_ref()) {
            (Coords::Rat(a), FieldContext::Cyclotomic(c)) => Coords::Rat(c.inv(a)?),
            (Coords::Rat(a), FieldContext::Quadratic(c)) => Coords::Rat(c.inv(a)?),
            (Coords::Mod(a), FieldContext::Finite(c)) => Coords::Mod(c.inv(a)?),
            (Coords::Rat(_), FieldContext::SexticS3(_)) => {
                // product of the nontrivial conjugates over the full norm
                let group = self.ctx.galois_group().clone();
                let mut prod = self.ctx.one();
                for i in 1..group.order() {
                    prod = prod.mul(&apply_aut(self, group.element(i))?);
                }
                let norm = self.mul(&prod);
                let q = norm
                    .to_rational()
                    .expect("full conjugate product lies in the base field");
                if q.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let scale = self.ctx.from_rational(&q.recip())?;
                return Ok(prod.mul(&scale));
            }
            _ => unreachable!("coordinates match the context kind"),
        };
        Ok(FieldElement { ctx: Arc::clone(&self.ctx), coords })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic: validates context agreement before dispatching.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if !a.same_context(b) {
        return Err(Error::ContextMismatch);
    }
    match op {
        ArithOp::Add => Ok(a.add(b)),
        ArithOp::Sub => Ok(a.sub(b)),
        ArithOp::Mul => Ok(a.mul(b)),
        ArithOp::Div => a.div(b),
    }
}

/// Applies a Galois automorphism to an element.
pub fn apply_aut(a: &FieldElement, g: &GroupElement) -> Result<FieldElement> {
    let group = a.ctx.galois_group();
    let idx = group.index_of(g).ok_or(Error::NotInGroup)?;
    Ok(apply_aut_unchecked(a, g, idx))
}

fn apply_aut_unchecked(a: &FieldElement, g: &GroupElement, idx: usize) -> FieldElement {
    let coords = match (&a.coords, a.ctx.as_ref(), g) {
        (Coords::Rat(v), FieldContext::Cyclotomic(c), GroupElement::Unit { k, .. }) => {
            Coords::Rat(c.apply_unit(v, *k))
        }
        (Coords::Rat(v), FieldContext::Quadratic(c), GroupElement::QuadConj { flip, .. }) => {
            Coords::Rat(if *flip { c.conjugate(v) } else { v.clone() })
        }
        (Coords::Mod(v), FieldContext::Finite(c), GroupElement::Frobenius { j, .. }) => {
            Coords::Mod(c.apply_frobenius(v, *j))
        }
        (Coords::Rat(v), FieldContext::SexticS3(c), GroupElement::S3Word { .. }) => {
            Coords::Rat(c.apply(v, idx))
        }
        _ => unreachable!("validated against the context's group"),
    };
    FieldElement { ctx: Arc::clone(&a.ctx), coords }
}

/// Matrix of left multiplication x -> a*x on the context basis, with the
/// base-field coefficients embedded as constant elements.
pub fn mult_matrix(a: &FieldElement) -> Matrix {
    let ctx = a.context();
    let d = ctx.degree();
    let mut entries = Vec::with_capacity(d * d);
    let mut columns = Vec::with_capacity(d);
    for j in 0..d {
        columns.push(a.mul(&ctx.basis_element(j)));
    }
    for i in 0..d {
        for col in columns.iter().take(d) {
            let entry = match &col.coords {
                Coords::Rat(v) => ctx
                    .from_rational(&v[i])
                    .expect("rational coefficients embed"),
                Coords::Mod(v) => {
                    let mut w = vec![0u64; d];
                    w[0] = v[i];
                    element_from_residues(ctx, w).expect("residues embed")
                }
            };
            entries.push(entry);
        }
    }
    Matrix::from_entries(d, d, entries).expect("square multiplication matrix")
}

/// Field norm to the prime field: det of the multiplication matrix.
pub fn norm_full(a: &FieldElement) -> FieldElement {
    mult_matrix(a).det().expect("multiplication matrix is square")
}

/// Relative norm: product of the H-conjugates. The result is H-fixed.
pub fn norm_rel(a: &FieldElement, h: &Subgroup) -> Result<FieldElement> {
    if h.parent().as_ref() != a.ctx.galois_group().as_ref() {
        return Err(Error::NotInGroup);
    }
    let mut acc = a.ctx.one();
    for g in h.elements() {
        acc = acc.mul(&apply_aut(a, g)?);
    }
    Ok(acc)
}

/// Norm along a transversal: product of phi_t(a) over the representatives.
/// For H-fixed `a` this is the norm from Fix(H) down to the base field.
pub fn transversal_norm(a: &FieldElement, t: &Transversal) -> Result<FieldElement> {
    let mut acc = a.ctx.one();
    for g in t.rep_elements() {
        acc = acc.mul(&apply_aut(a, g)?);
    }
    Ok(acc)
}

/// Minimal polynomial over Q, as the first linear dependency among the
/// powers of `a` on the context basis.
pub fn min_poly(a: &FieldElement) -> Result<QPoly> {
    if !a.ctx.is_characteristic_zero() {
        return Err(Error::CharacteristicZero);
    }
    let d = a.ctx.degree();
    let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(d + 1);
    let mut cur = a.ctx.one();
    for _ in 0..=d {
        powers.push(cur.rat_coords().to_vec());
        cur = cur.mul(a);
    }
    for k in 1..=d {
        if let Some(sol) = solve_linear(&powers[..k], &powers[k]) {
            let mut coeffs: Vec<Rational> = sol.into_iter().map(|c| -c).collect();
            coeffs.push(Rational::one());
            return Ok(QPoly::new(coeffs));
        }
    }
    unreachable!("powers of a field element of degree d are dependent by k = d")
}

/// Solves sum_i x_i columns[i] = rhs exactly; None when inconsistent.
fn solve_linear(columns: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let rows = rhs.len();
    let cols = columns.len();
    let mut aug = vec![vec![Rational::zero(); cols + 1]; rows];
    for (j, col) in columns.iter().enumerate() {
        for i in 0..rows {
            aug[i][j] = col[i].clone();
        }
    }
    for i in 0..rows {
        aug[i][cols] = rhs[i].clone();
    }
    let mut pivot_rows = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                #[allow(clippy::needless_range_loop)]
                for j in 0..=cols {
                    let t = &f * &aug[r][j];
                    aug[i][j] -= t;
                }
            }
        }
        pivot_rows.push((r, c));
        r += 1;
        if r == rows {
            break;
        }
    }
    // consistency: no row 0 = nonzero
    for row in aug.iter().skip(r) {
        if row[..cols].iter().all(|x| x.is_zero()) && !row[cols].is_zero() {
            return None;
        }
    }
    // free columns mean the dependency appeared earlier; require full rank
    if pivot_rows.len() < cols {
        return None;
    }
    let mut sol = vec![Rational::zero(); cols];
    for (row, col) in pivot_rows {
        sol[col] = aug[row][cols].clone();
    }
    Some(sol)
}

/// Exact total-positivity decision through the minimal polynomial: true iff
/// the element is zero or no real conjugate (root of the minimal polynomial)
/// lies in (-inf, 0]. Elements with no real conjugates are vacuously totally
/// positive.
pub fn is_totally_positive(a: &FieldElement) -> Result<bool> {
    if !a.ctx.is_characteristic_zero() {
        return Err(Error::CharacteristicZero);
    }
    if a.is_zero() {
        return Ok(true);
    }
    let mp = min_poly(a)?;
    let nonpositive = sturm_root_count(&mp, &Bound::NegInf, &Bound::Finite(Rational::zero()))?;
    Ok(nonpositive == 0)
}

/// Exhaustive image of the norm from GF(p^m) down to GF(p^l) for l | m,
/// computed as a^((p^m-1)/(p^l-1)) over every element.
pub fn ff_norm_image(ctx: &Arc<FieldContext>, base_degree: u32) -> Result<Vec<FieldElement>> {
    let FieldContext::Finite(c) = ctx.as_ref() else {
        return Err(Error::ContextMismatch);
    };
    let m = c.extension_degree();
    if base_degree == 0 || m % base_degree != 0 {
        return Err(Error::NonDivisor(base_degree as u64));
    }
    let top = (c.characteristic() as u128).pow(m) - 1;
    let base = (c.characteristic() as u128).pow(base_degree) - 1;
    let exp = top / base;
    let mut image: Vec<FieldElement> = Vec::new();
    for coords in c.enumerate() {
        let val = FieldElement { ctx: Arc::clone(ctx), coords: Coords::Mod(c.pow(&coords, exp)) };
        if !image.contains(&val) {
            image.push(val);
        }
    }
    image.sort_by(|a, b| a.residue_coords().cmp(b.residue_coords()));
    Ok(image)
}

/// The subfield GF(p^l) inside GF(p^m): fixed points of the l-th Frobenius.
pub fn ff_subfield(ctx: &Arc<FieldContext>, base_degree: u32) -> Result<Vec<FieldElement>> {
    let FieldContext::Finite(c) = ctx.as_ref() else {
        return Err(Error::ContextMismatch);
    };
    if base_degree == 0 || c.extension_degree() % base_degree != 0 {
        return Err(Error::NonDivisor(base_degree as u64));
    }
    let mut out = Vec::new();
    for coords in c.enumerate() {
        if c.apply_frobenius(&coords, base_degree) == coords {
            out.push(FieldElement { ctx: Arc::clone(ctx), coords: Coords::Mod(coords) });
        }
    }
    out.sort_by(|a, b| a.residue_coords().cmp(b.residue_coords()));
    Ok(out)
}

/// Every element of a finite-field context, in base-p numeral order.
pub fn ff_elements(ctx: &Arc<FieldContext>) -> Result<Vec<FieldElement>> {
    let FieldContext::Finite(c) = ctx.as_ref() else {
        return Err(Error::ContextMismatch);
    };
    Ok(c.enumerate()
        .into_iter()
        .map(|coords| FieldElement { ctx: Arc::clone(ctx), coords: Coords::Mod(coords) })
        .collect())
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.coords {
            Coords::Mod(v) => {
                let terms: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| match i {
                        0 => format!("{c}"),
                        1 => format!("{c}z"),
                        _ => format!("{c}z^{i}"),
                    })
                    .collect();
                write!(f, "{}", if terms.is_empty() { "0".into() } else { terms.join("+") })
            }
            Coords::Rat(v) => {
                let var = |i: usize| -> String {
                    match self.ctx.as_ref() {
                        FieldContext::SexticS3(_) => {
                            let (ai, wj) = (i / 2, i % 2);
                            match (ai, wj) {
                                (0, 0) => String::new(),
                                (0, 1) => "w".into(),
                                (1, 0) => "a".into(),
                                (a, 0) => format!("a^{a}"),
                                (1, _) => "a*w".into(),
                                (a, _) => format!("a^{a}*w"),
                            }
                        }
                        _ => match i {
                            0 => String::new(),
                            1 => "z".into(),
                            _ => format!("z^{i}"),
                        },
                    }
                };
                let mut out = String::new();
                for (i, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mag = c.abs();
                    if out.is_empty() {
                        if c.is_negative() {
                            out.push('-');
                        }
                    } else {
                        out.push(if c.is_negative() { '-' } else { '+' });
                    }
                    let v_str = var(i);
                    if mag.is_one() && !v_str.is_empty() {
                        out.push_str(&v_str);
                    } else if v_str.is_empty() {
                        out.push_str(&format_rational(&mag));
                    } else {
                        out.push_str(&format!("{}{}", format_rational(&mag), v_str));
                    }
                }
                write!(f, "{}", if out.is_empty() { "0/1".into() } else { out })
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ElementWire {
    field: FieldSpec,
    coords: Vec<String>,
}

pub(crate) fn coords_to_strings(e: &FieldElement) -> Vec<String> {
    match &e.coords {
        Coords::Rat(v) => v.iter().map(format_rational).collect(),
        Coords::Mod(v) => v.iter().map(|c| c.to_string()).collect(),
    }
}

pub(crate) fn element_from_strings(
    ctx: &Arc<FieldContext>,
    coords: &[String],
) -> Result<FieldElement> {
    let parsed: Result<Vec<Rational>> = coords.iter().map(|s| parse_rational(s)).collect();
    element_from_coords(ctx, parsed?)
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElementWire { field: self.ctx.spec(), coords: coords_to_strings(self) }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = ElementWire::deserialize(deserializer)?;
        let ctx = context_from_spec(&wire.field).map_err(serde::de::Error::custom)?;
        element_from_strings(&ctx, &wire.coords).map_err(serde::de::Error::custom)
    }
}

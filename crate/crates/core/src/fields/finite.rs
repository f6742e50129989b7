//! GF(p^m) as GF(p)[x] modulo the least irreducible monic polynomial of
//! degree m, plus the exhaustive norm-image computation.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{frobenius_group, GaloisGroup};

/// Residue arithmetic mod p, via u128 to avoid overflow.
fn addm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - b as u128 % p as u128) % p as u128) as u64
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u128, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

fn invm(a: u64, p: u64) -> u64 {
    powm(a, p as u128 - 2, p)
}

/// Polynomials over GF(p): coefficient vectors, lowest first, trimmed.
pub(crate) fn poly_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(x, y, p), p);
        }
    }
    poly_trim(out)
}

pub(crate) fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = invm(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let f = mulm(*r.last().unwrap(), lead_inv, p);
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = subm(r[shift + i], mulm(f, c, p), p);
        }
        r = poly_trim(r);
    }
    r
}

fn poly_divmod(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = invm(m[dm], p);
    let mut q = vec![0u64; r.len().saturating_sub(dm)];
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let f = mulm(*r.last().unwrap(), lead_inv, p);
        q[shift] = f;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = subm(r[shift + i], mulm(f, c, p), p);
        }
        r = poly_trim(r);
    }
    (poly_trim(q), r)
}

/// Extended Euclid over GF(p)[x]; returns (g, u) with u*a = g mod m.
fn poly_half_egcd(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (poly_trim(m.to_vec()), poly_trim(a.to_vec()));
    let (mut u0, mut u1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1, p);
        let qu1 = poly_mul(&q, &u1, p);
        let mut u = u0.clone();
        u.resize(u.len().max(qu1.len()), 0);
        for (i, &c) in qu1.iter().enumerate() {
            u[i] = subm(u[i], c, p);
        }
        let u = poly_trim(u);
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u;
    }
    (r0, u0)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone)]
pub struct FiniteFieldContext {
    p: u64,
    m: u32,
    /// Monic irreducible modulus of degree m, lowest coefficient first.
    modulus: Vec<u64>,
    group: Arc<GaloisGroup>,
}

impl FiniteFieldContext {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        assert!(m >= 1, "extension degree must be positive");
        let modulus = least_irreducible(p, m);
        Ok(FiniteFieldContext { p, m, modulus, group: frobenius_group(p, m) })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.m)
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    fn fit(&self, v: Vec<u64>) -> Vec<u64> {
        let mut v = v;
        v.resize(self.m as usize, 0);
        v
    }

    pub fn reduce(&self, raw: &[u64]) -> Vec<u64> {
        let r: Vec<u64> = raw.iter().map(|&c| c % self.p).collect();
        self.fit(poly_rem(&r, &self.modulus, self.p))
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| addm(x, y, self.p)).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| subm(x, y, self.p)).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| subm(0, x, self.p)).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.fit(poly_rem(&poly_mul(a, b, self.p), &self.modulus, self.p))
    }

    pub fn inv(&self, a: &[u64]) -> Result<Vec<u64>> {
        if a.iter().all(|&c| c == 0) {
            return Err(Error::DivisionByZero);
        }
        let (g, u) = poly_half_egcd(a, &self.modulus, self.p);
        debug_assert_eq!(g.len(), 1, "modulus is irreducible");
        let gi = invm(g[0], self.p);
        let scaled: Vec<u64> = u.iter().map(|&c| mulm(c, gi, self.p)).collect();
        Ok(self.fit(poly_rem(&scaled, &self.modulus, self.p)))
    }

    pub fn pow(&self, a: &[u64], mut e: u128) -> Vec<u64> {
        let mut acc = self.fit(vec![1]);
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius power t -> t^(p^j).
    pub fn apply_frobenius(&self, a: &[u64], j: u32) -> Vec<u64> {
        let mut out = a.to_vec();
        for _ in 0..(j % self.m) {
            out = self.pow(&out, self.p as u128);
        }
        out
    }

    /// All p^m coordinate vectors, in base-p numeral order.
    pub fn enumerate(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let total = self.order();
        for val in 0..total {
            let mut v = Vec::with_capacity(self.m as usize);
            let mut rest = val;
            for _ in 0..self.m {
                v.push((rest % self.p as u128) as u64);
                rest /= self.p as u128;
            }
            out.push(v);
        }
        out
    }
}

/// The least monic irreducible polynomial of degree m over GF(p), ordering
/// candidates by their coefficient vectors read as base-p numerals (constant
/// coefficient least significant). Found by trial division.
fn least_irreducible(p: u64, m: u32) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1]; // x
    }
    let total = (p as u128).pow(m);
    for val in 0..total {
        let mut cand = Vec::with_capacity(m as usize + 1);
        let mut rest = val;
        for _ in 0..m {
            cand.push((rest % p as u128) as u64);
            rest /= p as u128;
        }
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF(p)")
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let total = (p as u128).pow(d as u32);
        for val in 0..total {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = val;
            for _ in 0..d {
                g.push((rest % p as u128) as u64);
                rest /= p as u128;
            }
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_irreducible_moduli() {
        // only irreducible monic quadratic over GF(2)
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        // prime field
        assert_eq!(least_irreducible(3, 1), vec![0, 1]);
        // least quartic over GF(2): x^4 + x + 1 (oracle: trial division below)
        let q = least_irreducible(2, 4);
        assert_eq!(q, vec![1, 1, 0, 0, 1]);
        assert!(is_irreducible(&q, 2));
        // x^2 + 1 over GF(3)
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn gf4_multiplication_table() {
        // oracle: the full 4-element multiplication table of GF(4),
        // g = class of x, modulus x^2 + x + 1, so g*g = g + 1.
        let ctx = FiniteFieldContext::new(2, 2).unwrap();
        let g = vec![0u64, 1];
        assert_eq!(ctx.mul(&g, &g), vec![1, 1]);
        let gg = ctx.mul(&g, &ctx.mul(&g, &g));
        assert_eq!(gg, vec![1, 0], "g^3 = 1");
        for a in ctx.enumerate() {
            for b in ctx.enumerate() {
                // commutativity and the defining reduction
                assert_eq!(ctx.mul(&a, &b), ctx.mul(&b, &a));
            }
            if a.iter().any(|&c| c != 0) {
                let inv = ctx.inv(&a).unwrap();
                assert_eq!(ctx.mul(&a, &inv), vec![1, 0]);
            }
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(3) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(91));
        assert!(FiniteFieldContext::new(4, 1).is_err());
    }
}

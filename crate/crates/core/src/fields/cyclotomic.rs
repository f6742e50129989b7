//! The cyclotomic field Q(zeta_n) on the power basis modulo the n-th
//! cyclotomic polynomial.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{unit_group, GaloisGroup};
use crate::poly::{cyclotomic_polynomial, euler_phi, QPoly};
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct CyclotomicContext {
    n: u64,
    degree: usize,
    modulus: QPoly,
    /// x^e mod Phi_n for e in 0..n; automorphisms are monomial substitutions
    /// through this table.
    power_red: Vec<Vec<Rational>>,
    group: Arc<GaloisGroup>,
}

impl CyclotomicContext {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidConductor(n));
        }
        let modulus = cyclotomic_polynomial(n);
        let degree = modulus.degree().expect("Phi_n is nonzero");
        debug_assert_eq!(degree as u64, euler_phi(n));
        debug_assert!(modulus.is_monic());
        debug_assert!({
            let xn1 = QPoly::monomial(n as usize).sub(&QPoly::one());
            xn1.div_exact(&modulus).is_some()
        });
        // cover exponents up to both zeta^(n-1) (automorphisms) and the top
        // degree of a raw product (2*degree - 2)
        let table_len = (n as usize).max(2 * degree - 1);
        let mut power_red = Vec::with_capacity(table_len);
        for e in 0..table_len {
            let (_, r) = QPoly::monomial(e).div_rem(&modulus);
            power_red.push(pad(&r, degree));
        }
        Ok(CyclotomicContext { n, degree, modulus, power_red, group: unit_group(n)? })
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &QPoly {
        &self.modulus
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    pub fn reduce(&self, p: &QPoly) -> Vec<Rational> {
        let (_, r) = p.div_rem(&self.modulus);
        pad(&r, self.degree)
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let d = self.degree;
        let mut conv = vec![Rational::zero(); 2 * d - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                conv[i + j] += ai * bj;
            }
        }
        let mut out: Vec<Rational> = conv[..d].to_vec();
        for (e, c) in conv.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (k, r) in self.power_red[e].iter().enumerate() {
                if !r.is_zero() {
                    out[k] += c * r;
                }
            }
        }
        out
    }

    pub fn inv(&self, a: &[Rational]) -> Result<Vec<Rational>> {
        let pa = QPoly::new(a.to_vec());
        if pa.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, u, _) = pa.extended_gcd(&self.modulus);
        // Phi_n is irreducible over Q, so the gcd with any nonzero residue
        // is 1 after normalization.
        debug_assert_eq!(g.degree(), Some(0));
        Ok(self.reduce(&u))
    }

    /// zeta^i -> zeta^(i*k mod n), extended linearly.
    pub fn apply_unit(&self, a: &[Rational], k: u64) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.degree];
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((i as u64) * k % self.n) as usize;
            for (j, r) in self.power_red[e].iter().enumerate() {
                if !r.is_zero() {
                    out[j] += c * r;
                }
            }
        }
        out
    }
}

pub(crate) fn pad(p: &QPoly, len: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = p.coeffs().to_vec();
    assert!(v.len() <= len, "reduced polynomial fits the basis");
    v.resize(len, Rational::zero());
    v
}

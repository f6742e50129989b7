//! Univariate polynomials over the exact rationals, plus the two pieces of
//! machinery built on them: cyclotomic polynomials and Sturm-sequence real
//! root counting.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat_i64, Rational};

/// Polynomial over the rationals, coefficients lowest degree first.
/// The zero polynomial is the empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

pub type QPoly = RationalPolynomial;

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::new(vec![Rational::one()])
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        QPoly::new(cs.iter().map(|&c| rat_i64(c)).collect())
    }

    /// x^k
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        QPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        QPoly::new(out)
    }

    pub fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics only if `div` is zero.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lead_inv = div.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd && self.degree() < div.degree() {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd || (rem.len() == dd + 1 && dd == 0) {
            // strip leading zeros
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
            let shift = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() * &lead_inv;
            quot[shift] = factor.clone();
            for (i, c) in div.coeffs.iter().enumerate() {
                let t = &factor * c;
                rem[shift + i] -= t;
            }
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Exact quotient; returns None when the division leaves a remainder.
    pub fn div_exact(&self, div: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(div);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat_i64(i as i64 + 1))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => QPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns (g, u, v) with u*self + v*other = g, g monic
    /// when nonzero.
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (QPoly::one(), QPoly::zero());
        let (mut v0, mut v1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let u = u0.sub(&q.mul(&u1));
            let v = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
            v0 = v1;
            v1 = v;
        }
        match r0.leading() {
            None => (r0, u0, v0),
            Some(l) => {
                let s = l.recip();
                (r0.scale(&s), u0.scale(&s), v0.scale(&s))
            }
        }
    }

    /// f / gcd(f, f'): same distinct roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.monic();
        }
        self.div_exact(&g)
            .expect("gcd divides the polynomial")
            .monic()
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let unit_coeff = mag.is_one() && k > 0;
            if !unit_coeff {
                if mag.denom().is_one() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Euler's totient by trial-division factorization.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The n-th cyclotomic polynomial, by exact division of x^n - 1 by the
/// product of the cyclotomic polynomials of the proper divisors of n.
pub fn cyclotomic_polynomial(n: u64) -> QPoly {
    assert!(n >= 1);
    let mut table: Vec<Option<QPoly>> = vec![None; n as usize + 1];
    cyclo_rec(n, &mut table)
}

fn cyclo_rec(n: u64, table: &mut Vec<Option<QPoly>>) -> QPoly {
    if let Some(p) = &table[n as usize] {
        return p.clone();
    }
    // x^n - 1
    let mut xn1 = vec![Rational::zero(); n as usize + 1];
    xn1[0] = -Rational::one();
    xn1[n as usize] = Rational::one();
    let mut num = QPoly::new(xn1);
    for d in 1..n {
        if n.is_multiple_of(d) {
            let pd = cyclo_rec(d, table);
            num = num
                .div_exact(&pd)
                .expect("cyclotomic polynomials divide x^n - 1 exactly");
        }
    }
    table[n as usize] = Some(num.clone());
    num
}

/// Interval endpoint for root counting.
#[derive(Debug, Clone, PartialEq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_at(p: &QPoly, b: &Bound) -> i8 {
    match b {
        Bound::Finite(x) => sign(&p.eval(x)),
        Bound::PosInf => p.leading().map_or(0, sign),
        Bound::NegInf => match p.degree() {
            None => 0,
            Some(d) => {
                let s = p.leading().map_or(0, sign);
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        },
    }
}

fn sign_variations(chain: &[QPoly], b: &Bound) -> usize {
    let signs: Vec<i8> = chain.iter().map(|p| sign_at(p, b)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Exact count of distinct real roots of `f` in the half-open interval
/// (lo, hi]. The square part is removed internally, so multiple roots are
/// counted once; the zero polynomial is an error.
pub fn sturm_root_count(f: &QPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.squarefree_part();
    if f.degree() == Some(0) {
        return Ok(0);
    }
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let last = &chain[chain.len() - 1];
        if last.is_zero() {
            chain.pop();
            break;
        }
        let prev = &chain[chain.len() - 2];
        let (_, r) = prev.div_rem(last);
        chain.push(r.neg());
    }
    let vl = sign_variations(&chain, lo);
    let vh = sign_variations(&chain, hi);
    Ok(vl.saturating_sub(vh))
}

//! Exact rationals: thin helpers over `num_rational::BigRational`.
//!
//! `BigRational` already maintains the canonical form we need (eagerly
//! gcd-reduced, positive denominator, zero as 0/1), so the base scalar type
//! is a re-export and this module only adds the wire format and a few
//! conveniences used throughout the crate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Wire format: always `numerator/denominator`, e.g. `5/1`, `-3/2`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Height of a rational: max(|numerator|, denominator). Used to bound
/// enumeration in witness searches.
pub fn height(q: &Rational) -> BigInt {
    let n = q.numer().abs();
    let d = q.denom().clone();
    if n > d { n } else { d }
}

/// All rationals of height at most `h` (both |p| <= h and q <= h), in a
/// deterministic order. Includes 0.
pub fn rationals_of_height(h: u32) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for den in 1..=h as i64 {
        for num in 1..=h as i64 {
            let q = rat(num, den);
            if height(&q) <= BigInt::from(h) && !out.contains(&q) {
                out.push(q.clone());
                out.push(-q);
            }
        }
    }
    out
}

pub fn rat_is_one(q: &Rational) -> bool {
    q.is_one()
}

//! The quadratic field Q(sqrt d) for squarefree d, on the basis {1, sqrt d}.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{quadratic_group, GaloisGroup};
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct QuadraticContext {
    d: i64,
    group: Arc<GaloisGroup>,
}

impl QuadraticContext {
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::BadRadicand(d));
        }
        Ok(QuadraticContext { d, group: quadratic_group(d) })
    }

    pub fn radicand(&self) -> i64 {
        self.d
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let d = Rational::from_integer(self.d.into());
        vec![
            &a[0] * &b[0] + &d * &a[1] * &b[1],
            &a[0] * &b[1] + &a[1] * &b[0],
        ]
    }

    pub fn inv(&self, a: &[Rational]) -> Result<Vec<Rational>> {
        let d = Rational::from_integer(self.d.into());
        let norm = &a[0] * &a[0] - &d * &a[1] * &a[1];
        if norm.is_zero() {
            // d squarefree (hence not a square), so norm vanishes only at 0
            return Err(Error::DivisionByZero);
        }
        Ok(vec![&a[0] / &norm, -(&a[1] / &norm)])
    }

    pub fn conjugate(&self, a: &[Rational]) -> Vec<Rational> {
        vec![a[0].clone(), -a[1].clone()]
    }
}

fn is_squarefree(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

//! The sextic splitting field Q(alpha, omega) with alpha^3 = 2 and
//! omega^2 = -1 - omega, on the basis {alpha^i omega^j : 0 <= i < 3,
//! 0 <= j < 2}. Its automorphism group is S3, generated by
//! sigma :: omega -> omega^2 and tau :: alpha -> alpha omega, and every
//! automorphism acts through a precomputed basis table.

use std::sync::Arc;

use num_traits::Zero;

use crate::group::{s3_group, GaloisGroup, GroupElement};
use crate::rational::{rat_i64, Rational};

pub const SEXTIC_DEGREE: usize = 6;

#[derive(Debug, Clone)]
pub struct SexticContext {
    /// mult_table[a][b] = coordinates of basis_a * basis_b
    mult_table: Vec<Vec<Vec<Rational>>>,
    /// aut_table[g][b] = coordinates of (group element g)(basis_b)
    aut_table: Vec<Vec<Vec<Rational>>>,
    group: Arc<GaloisGroup>,
}

fn flat(i: usize, j: usize) -> usize {
    2 * i + j
}

/// Coordinates of f * alpha^ai * omega^wj with reduction by alpha^3 = 2 and
/// omega^2 = -1 - omega (omega^3 = 1 handled by reducing wj mod 3 first).
fn monomial(mut f: Rational, mut ai: usize, mut wj: usize) -> Vec<Rational> {
    while ai >= 3 {
        f *= rat_i64(2);
        ai -= 3;
    }
    wj %= 3;
    let mut out = vec![Rational::zero(); SEXTIC_DEGREE];
    if wj <= 1 {
        out[flat(ai, wj)] = f;
    } else {
        out[flat(ai, 0)] = -f.clone();
        out[flat(ai, 1)] = -f;
    }
    out
}

impl SexticContext {
    pub fn new() -> Self {
        let group = s3_group();
        let mut mult_table = vec![vec![vec![]; SEXTIC_DEGREE]; SEXTIC_DEGREE];
        for i1 in 0..3 {
            for j1 in 0..2 {
                for i2 in 0..3 {
                    for j2 in 0..2 {
                        mult_table[flat(i1, j1)][flat(i2, j2)] =
                            monomial(rat_i64(1), i1 + i2, j1 + j2);
                    }
                }
            }
        }
        let mut aut_table = Vec::with_capacity(group.order());
        for g in group.elements() {
            let (a, b) = match g {
                GroupElement::S3Word { tau, sigma } => (*tau as usize, *sigma as usize),
                _ => unreachable!("S3 group carries S3 words"),
            };
            let mut row = Vec::with_capacity(SEXTIC_DEGREE);
            for i in 0..3 {
                for j in 0..2 {
                    // g(alpha^i omega^j) = alpha^i omega^(a*i + j*2^b)
                    let w = (a * i + j * (if b == 1 { 2 } else { 1 })) % 3;
                    row.push(monomial(rat_i64(1), i, w));
                }
            }
            aut_table.push(row);
        }
        SexticContext { mult_table, aut_table, group }
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); SEXTIC_DEGREE];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let t = x * y;
                for (k, c) in self.mult_table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &t * c;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, a: &[Rational], g_index: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); SEXTIC_DEGREE];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, c) in self.aut_table[g_index][i].iter().enumerate() {
                if !c.is_zero() {
                    out[k] += x * c;
                }
            }
        }
        out
    }

    /// alpha + omega, a primitive element of the whole field.
    pub fn generator_coords(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); SEXTIC_DEGREE];
        v[flat(1, 0)] = rat_i64(1);
        v[flat(0, 1)] = rat_i64(1);
        v
    }

    /// alpha itself (sigma-fixed cube root of 2).
    pub fn alpha_coords(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); SEXTIC_DEGREE];
        v[flat(1, 0)] = rat_i64(1);
        v
    }

    /// omega (primitive cube root of unity).
    pub fn omega_coords(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); SEXTIC_DEGREE];
        v[flat(0, 1)] = rat_i64(1);
        v
    }
}

impl Default for SexticContext {
    fn default() -> Self {
        SexticContext::new()
    }
}

//! Seeded random sampling of field elements and matrices. Coordinate
//! heights stay small so rational bit growth stays bounded through the
//! 64-dimensional contractions in the verification suites.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fields::{element_from_coords, element_from_residues, FieldContext, FieldElement};
use crate::matrix::Matrix;
use crate::rational::Rational;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sample_rational<R: Rng>(rng: &mut R, height: u32) -> Rational {
    let h = height as i64;
    let num = rng.gen_range(-h..=h);
    let den = rng.gen_range(1..=h);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn sample_element<R: Rng>(
    rng: &mut R,
    ctx: &Arc<FieldContext>,
    height: u32,
) -> FieldElement {
    match ctx.as_ref() {
        FieldContext::Finite(c) => {
            let coords = (0..c.extension_degree())
                .map(|_| rng.gen_range(0..c.characteristic()))
                .collect();
            element_from_residues(ctx, coords).expect("residues fit the context")
        }
        _ => {
            let coords = (0..ctx.degree()).map(|_| sample_rational(rng, height)).collect();
            element_from_coords(ctx, coords).expect("coordinates fit the context")
        }
    }
}

pub fn sample_nonzero_element<R: Rng>(
    rng: &mut R,
    ctx: &Arc<FieldContext>,
    height: u32,
) -> FieldElement {
    loop {
        let e = sample_element(rng, ctx, height);
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn sample_matrix<R: Rng>(
    rng: &mut R,
    ctx: &Arc<FieldContext>,
    rows: usize,
    cols: usize,
    height: u32,
) -> Matrix {
    let entries = (0..rows * cols).map(|_| sample_element(rng, ctx, height)).collect();
    Matrix::from_entries(rows, cols, entries).expect("sampled entries share the context")
}

pub fn sample_perm<R: Rng>(rng: &mut R, d: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..d).collect();
    // Fisher-Yates
    for i in (1..d).rev() {
        let j = rng.gen_range(0..=i);
        p.swap(i, j);
    }
    p
}

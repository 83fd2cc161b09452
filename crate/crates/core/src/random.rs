//! Seeded random arrangements for fixtures and property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg::RingMatrix;
use crate::quadratic_order::{CurveParams, RingElement};

/// A `k x n` matrix over the order of `curve` with coordinates drawn uniformly from
/// `[-bound, bound]`, row by row, `x` before `y`. The same seed always gives the same matrix.
pub fn random_matrix(curve: &CurveParams, k: usize, n: usize, bound: u32, seed: u64) -> Result<RingMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_matrix_with(&mut rng, curve, k, n, bound)
}

pub fn random_matrix_with<R: Rng>(
    rng: &mut R,
    curve: &CurveParams,
    k: usize,
    n: usize,
    bound: u32,
) -> Result<RingMatrix> {
    let b = i64::from(bound);
    let entries = (0..k * n)
        .map(|_| {
            let x = rng.gen_range(-b..=b);
            let y = rng.gen_range(-b..=b);
            RingElement::new(x, y)
        })
        .collect();
    RingMatrix::new(curve.clone(), k, n, entries)
}

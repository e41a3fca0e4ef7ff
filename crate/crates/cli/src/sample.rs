//! Seeded choice of `f` when no coefficients are given.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twisted_newton_core::padic::FqField;

pub const DEFAULT_SEED: u64 = 0;

/// Uniform codes for `a_0..a_d` over `F_q`, redrawing `a_d` until it is nonzero.
pub fn random_coeffs(field: &FqField, d: u64, seed: u64) -> Vec<u64> {
    let q = field.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut codes: Vec<u64> = (0..=d).map(|_| rng.gen_range(0..q)).collect();
    while codes[d as usize] == 0 {
        codes[d as usize] = rng.gen_range(0..q);
    }
    codes
}

/// Explicit coefficients win; otherwise draw from the seed and report it.
pub fn resolve(field: &FqField, d: u64, coeffs: Option<&[u64]>, seed: Option<u64>) -> (Vec<u64>, Option<u64>) {
    match coeffs {
        Some(c) => (c.to_vec(), None),
        None => {
            let seed = seed.unwrap_or(DEFAULT_SEED);
            (random_coeffs(field, d, seed), Some(seed))
        }
    }
}

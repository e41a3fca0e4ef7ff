//! Coefficients `λ_n` of the Artin–Hasse exponential `E(x) = exp(Σ x^{p^i} / p^i)`.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith::{rational_mod, Rational};
use crate::error::{Error, Result};

/// Exact `λ_0, ..., λ_m` over `Q`.
///
/// Differentiating `log E` gives `n λ_n = Σ_{p^i <= n} λ_{n - p^i}`.
pub fn artin_hasse_rational(m: usize, p: u64) -> Vec<Rational> {
    let mut lam: Vec<Rational> = Vec::with_capacity(m + 1);
    lam.push(Rational::one());
    for n in 1..=m {
        let mut acc = Rational::zero();
        let mut pk = 1usize;
        while pk <= n {
            acc += &lam[n - pk];
            match pk.checked_mul(p as usize) {
                Some(next) => pk = next,
                None => break,
            }
        }
        lam.push(acc / Rational::from_integer((n as i64).into()));
    }
    lam
}

/// `λ_0, ..., λ_m` reduced modulo `modulus` (a power of `p`).
pub fn artin_hasse_coeffs(m: usize, modulus: u64, p: u64) -> Result<Vec<u64>> {
    artin_hasse_rational(m, p)
        .iter()
        .enumerate()
        .map(|(n, x)| rational_mod(x, modulus).ok_or(Error::NonIntegralArtinHasse { index: n }))
        .collect()
}

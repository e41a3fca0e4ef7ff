//! The u-twisted Hasse polynomials of `[0, d]`.
//!
//! For `1 <= n <= d - 1` and a block `i` the component is
//!
//! ```text
//! H_{n,u}^{(i)}(y) = Σ_{τ ∈ S_{n,i}} sgn(τ) Π_{l<n} Σ_{(n_j)} Π_{j=1}^{d} λ_{n_j} y_j^{n_j}
//! ```
//!
//! where the inner sum runs over [`restricted_compositions`] of
//! `N_l = p l + u_{b-i} - τ(l)`. `H_{n,u}` is the product over blocks and `H_u`
//! the product over `n`. Coefficients live in `F_p`; `y_0` never occurs.

mod perm;
mod poly;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

pub use perm::{bounded_permutations, restricted_compositions, sign_of, SignedPerm};
pub use poly::{Monomial, SparsePolynomial};

use crate::arith::{ceil_div, mul_mod, sub_mod};
use crate::error::{Error, Result};
use crate::padic::artin_hasse::artin_hasse_coeffs;
use crate::padic::field::{FqElem, FqField};
use crate::twist::TwistData;

/// Term budget used by [`hasse_u`] when expanding the full product.
pub const DEFAULT_TERM_BUDGET: usize = 200_000;

/// The permutations making up `S_{n,i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermSubset {
    pub n: u64,
    pub i: usize,
    pub perms: Vec<SignedPerm>,
}

/// `τ(l) >= p l + u_{b-i} - d ⌈(p l + u_{b-i} - (n - 1)) / d⌉` for each `l < n`.
pub fn s_ni_lower_bounds(td: &TwistData, n: u64, i: usize) -> Vec<i64> {
    let (p, d) = (td.p as i64, td.d as i64);
    let ui = td.block_digit(i) as i64;
    (0..n as i64)
        .map(|l| {
            let top = p * l + ui;
            top - d * ceil_div(top - (n as i64 - 1), d)
        })
        .collect()
}

pub fn enumerate_s_ni(td: &TwistData, n: u64, i: usize) -> PermSubset {
    PermSubset { n, i, perms: bounded_permutations(&s_ni_lower_bounds(td, n, i)) }
}

/// Largest Artin–Hasse index that can occur for `n <= d`.
pub fn lambda_bound(td: &TwistData) -> usize {
    let umax = td.digits.iter().copied().max().unwrap_or(0);
    ceil_div((td.p * (td.d - 1) + umax) as i64, td.d as i64) as usize
}

/// `λ_0, ..., λ_{lambda_bound}` reduced mod `p`.
pub fn lambda_table(td: &TwistData) -> Result<Vec<u64>> {
    artin_hasse_coeffs(lambda_bound(td), td.p, td.p)
}

fn lambda(lambdas: &[u64], k: u64) -> Result<u64> {
    lambdas
        .get(k as usize)
        .copied()
        .ok_or(Error::LambdaIndexOutOfRange { index: k as usize, available: lambdas.len() })
}

/// `Σ_{(n_j)} Π λ_{n_j} y_j^{n_j}` over compositions of `big_n`; zero for `big_n < 0`.
pub fn composition_factor(td: &TwistData, big_n: i64, lambdas: &[u64]) -> Result<SparsePolynomial> {
    let (p, d) = (td.p, td.d);
    let mut out = SparsePolynomial::zero(p, d as usize + 1);
    if big_n < 0 {
        return Ok(out);
    }
    for comp in restricted_compositions(big_n as u64, d) {
        let mut c = 1u64;
        for &nj in &comp {
            c = mul_mod(c, lambda(lambdas, nj)?, p);
        }
        let mut mono = vec![0u32; d as usize + 1];
        for (j, &nj) in comp.iter().enumerate() {
            mono[j + 1] = nj as u32;
        }
        out.add_term(mono, c);
    }
    Ok(out)
}

/// `H_{n,u}^{(i)}` over `F_p`.
pub fn hasse_component(td: &TwistData, n: u64, i: usize, lambdas: &[u64]) -> Result<SparsePolynomial> {
    let (p, nvars) = (td.p, td.d as usize + 1);
    let ui = td.block_digit(i) as i64;
    let mut cache: Vec<Option<SparsePolynomial>> = Vec::new();
    let mut total = SparsePolynomial::zero(p, nvars);
    for perm in enumerate_s_ni(td, n, i).perms {
        let mut term = SparsePolynomial::constant(p, nvars, 1);
        for (l, &t) in perm.images.iter().enumerate() {
            let big_n = td.p as i64 * l as i64 + ui - t as i64;
            // N_l ranges over [p l + u - n + 1, p l + u]; index the cache by (l, τ(l))
            let key = l * n as usize + t;
            if cache.len() <= key {
                cache.resize(key + 1, None);
            }
            if cache[key].is_none() {
                cache[key] = Some(composition_factor(td, big_n, lambdas)?);
            }
            term = term.mul(cache[key].as_ref().expect("filled above"));
            if term.is_zero() {
                break;
            }
        }
        let c = if perm.sign == 1 { 1 } else { p - 1 };
        total = total.add(&term.scale(c));
    }
    Ok(total)
}

/// `H_{n,u} = Π_{i<b} H_{n,u}^{(i)}`.
pub fn hasse_n(td: &TwistData, n: u64, lambdas: &[u64]) -> Result<SparsePolynomial> {
    let mut acc = SparsePolynomial::constant(td.p, td.d as usize + 1, 1);
    for i in 0..td.b as usize {
        acc = acc.mul(&hasse_component(td, n, i, lambdas)?);
    }
    Ok(acc)
}

/// `H_u` kept as its list of components `components[n - 1][i]`; the expanded
/// polynomial can be very large, evaluation never needs it.
#[derive(Debug, Clone)]
pub struct HasseProduct {
    pub td: TwistData,
    pub components: Vec<Vec<SparsePolynomial>>,
}

impl HasseProduct {
    pub fn new(td: &TwistData) -> Result<Self> {
        let lambdas = lambda_table(td)?;
        let components = (1..td.d)
            .map(|n| (0..td.b as usize).map(|i| hasse_component(td, n, i, &lambdas)).collect())
            .collect::<Result<_>>()?;
        Ok(Self { td: td.clone(), components })
    }

    /// True when some component vanishes identically.
    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().any(SparsePolynomial::is_zero)
    }

    pub fn evaluate(&self, field: &FqField, values: &[FqElem]) -> Result<FqElem> {
        let mut acc = field.one();
        for h in self.components.iter().flatten() {
            acc = field.mul(&acc, &h.evaluate(field, values)?);
            if field.is_zero(&acc) {
                break;
            }
        }
        Ok(acc)
    }

    pub fn expand(&self, budget: usize) -> Result<SparsePolynomial> {
        let mut acc = SparsePolynomial::constant(self.td.p, self.td.d as usize + 1, 1);
        for h in self.components.iter().flatten() {
            acc = acc.mul_bounded(h, budget)?;
        }
        Ok(acc)
    }
}

/// The expanded `H_u`; fails with [`Error::TermBudget`] when it is too large.
pub fn hasse_u(td: &TwistData) -> Result<SparsePolynomial> {
    HasseProduct::new(td)?.expand(DEFAULT_TERM_BUDGET)
}

/// Field `F_q` matching the twist data, with the default modulus.
pub fn twist_field(td: &TwistData) -> Result<FqField> {
    FqField::new(td.p, td.a as usize, None)
}

/// Check `(a_0, ..., a_d)` describes a degree-`d` polynomial over `field`.
pub fn check_coefficients(td: &TwistData, field: &FqField, coeffs: &[FqElem]) -> Result<()> {
    if coeffs.len() != td.d as usize + 1 {
        return Err(Error::CoefficientCount { expected: td.d as usize + 1, got: coeffs.len() });
    }
    if field.degree() != td.a as usize || field.p() != td.p {
        return Err(Error::DomainMismatch);
    }
    if field.is_zero(&coeffs[td.d as usize]) {
        return Err(Error::LeadingCoefficientZero);
    }
    Ok(())
}

/// `H_u(a_0, ..., a_d) != 0`.
pub fn is_generic(hasse: &HasseProduct, field: &FqField, coeffs: &[FqElem]) -> Result<bool> {
    check_coefficients(&hasse.td, field, coeffs)?;
    Ok(!field.is_zero(&hasse.evaluate(field, coeffs)?))
}

/// The distinguished permutation and monomial of one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub tau: SignedPerm,
    pub monomial: Monomial,
    /// Coefficient of `monomial` in the component, in `F_p`.
    pub coefficient: u64,
    /// `sgn(τ) Π_l λ_{⌊N_l/d⌋}` mod `p`.
    pub predicted: u64,
}

/// Build the witness permutation: residues `r_l = (p l + u_{b-i}) mod d` that
/// are `< n` stay fixed, the remaining positions take the largest free values
/// in order of increasing residue.
pub fn witness_permutation(td: &TwistData, n: u64, i: usize) -> Option<SignedPerm> {
    let (p, d) = (td.p, td.d);
    let ui = td.block_digit(i);
    let n = n as usize;
    let r: Vec<u64> = (0..n as u64).map(|l| (p * l + ui) % d).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&l| (r[l], l));
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &l in order.iter().filter(|&&l| r[l] < n as u64) {
        let v = r[l] as usize;
        if used[v] {
            return None;
        }
        used[v] = true;
        images[l] = v;
    }
    for &l in order.iter().filter(|&&l| r[l] >= n as u64) {
        let v = (0..n).rev().find(|&v| !used[v])?;
        used[v] = true;
        images[l] = v;
    }
    let sign = sign_of(&images);
    Some(SignedPerm { images, sign })
}

pub fn minimal_monomial_witness(td: &TwistData, n: u64, i: usize, lambdas: &[u64]) -> Result<Witness> {
    let violation = |what: &str| Error::TheoremViolation(format!("witness for n={n}, i={i}: {what}"));
    let (p, d) = (td.p, td.d);
    let tau = witness_permutation(td, n, i).ok_or_else(|| violation("no permutation"))?;
    let lower = s_ni_lower_bounds(td, n, i);
    if tau.images.iter().zip(&lower).any(|(&t, &lb)| (t as i64) < lb) {
        return Err(violation("permutation outside S_{n,i}"));
    }
    let ui = td.block_digit(i);
    let mut monomial = vec![0u32; d as usize + 1];
    let mut predicted = if tau.sign == 1 { 1 } else { sub_mod(0, 1, p) };
    for (l, &t) in tau.images.iter().enumerate() {
        let big_n = (p * l as u64 + ui)
            .checked_sub(t as u64)
            .ok_or_else(|| violation("negative exponent total"))?;
        let (qd, rr) = (big_n / d, big_n % d);
        monomial[d as usize] += qd as u32;
        if rr > 0 {
            monomial[rr as usize] += 1;
        }
        predicted = mul_mod(predicted, lambda(lambdas, qd)?, p);
    }
    let coefficient = hasse_component(td, n, i, lambdas)?.coeff(&monomial);
    if coefficient == 0 {
        return Err(violation("coefficient vanishes"));
    }
    Ok(Witness { tau, monomial, coefficient, predicted })
}

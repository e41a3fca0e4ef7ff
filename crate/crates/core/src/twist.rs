//! Base-p digit bookkeeping for the twist `u` and the slope function `ω`.

use alloc::vec::Vec;

use crate::arith::{ceil_div, frac_prime_num, is_prime, Rational};
use crate::error::{Error, Result};

/// Parameters `(p, a, d, u)` together with the digits of `u`, the Frobenius
/// period `b` of the twist and the residues `s_i = p^i u mod (q - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistData {
    pub p: u64,
    pub a: u32,
    pub q: u64,
    pub d: u64,
    pub u: u64,
    /// `u = Σ digits[i] p^i`, `0 <= digits[i] < p`, length `a`.
    pub digits: Vec<u64>,
    /// Least `b >= 1` with `p^b u ≡ u (mod q - 1)`.
    pub b: u32,
    /// `s[i] = p^i u mod (q - 1)` for `0 <= i < b`.
    pub s: Vec<u64>,
}

impl TwistData {
    pub fn new(p: u64, a: u32, d: u64, u: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if a == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p.checked_pow(a).filter(|q| *q < (1 << 40)).ok_or(Error::ParameterOverflow)?;
        if u > q - 2 {
            return Err(Error::TwistOutOfRange { u, max: q - 2 });
        }
        if d > (1 << 20) {
            return Err(Error::ParameterOverflow);
        }
        let mut digits = Vec::with_capacity(a as usize);
        let mut rest = u;
        for _ in 0..a {
            digits.push(rest % p);
            rest /= p;
        }
        let m = q - 1;
        let shift = |x: u64| ((x as u128 * p as u128) % m as u128) as u64;
        // q - 1 >= 1; for q = 2 every residue is 0.
        let u_mod = u % m;
        let mut b = 1u32;
        let mut cur = shift(u_mod);
        while cur != u_mod {
            cur = shift(cur);
            b += 1;
        }
        let mut s = Vec::with_capacity(b as usize);
        let mut cur = u_mod;
        for _ in 0..b {
            s.push(cur);
            cur = shift(cur);
        }
        Ok(Self { p, a, q, d, u, digits, b, s })
    }

    /// `u_j` with the index read periodically modulo `b`.
    pub fn digit(&self, j: usize) -> u64 {
        self.digits[j % self.b as usize]
    }

    /// The digit `u_{b-i}` attached to block `i` (any integer `i`, read mod `b`).
    pub fn block_digit(&self, i: usize) -> u64 {
        let b = self.b as usize;
        self.digit((b - i % b) % b)
    }

    /// `s_i` with `i` read modulo `b`.
    pub fn residue(&self, i: usize) -> u64 {
        self.s[i % self.b as usize]
    }

    /// Quotient `q_i` in `p^i u = q_i (q - 1) + s_i`.
    pub fn quotient(&self, i: u32) -> u128 {
        let m = (self.q - 1) as u128;
        let pi = (self.p as u128).pow(i);
        (pi * self.u as u128 - self.residue(i as usize) as u128) / m
    }

    /// `ε(u) = min_{1<=i<=b} d {u_i / d}'`, an integer in `[1, d]`.
    pub fn epsilon(&self) -> u64 {
        (1..=self.b as usize)
            .map(|i| frac_prime_num(self.digit(i) as i64, self.d as i64) as u64)
            .min()
            .expect("b >= 1")
    }

    /// `4d - ε(u)`; the main theorems need `p` strictly above it.
    pub fn prime_bound(&self) -> i64 {
        4 * self.d as i64 - self.epsilon() as i64
    }

    pub fn satisfies_prime_bound(&self) -> bool {
        self.p as i64 > self.prime_bound()
    }

    /// `δ_∈^{(i)}(n)`: 1 iff `p l + u_{b-i} ≡ n (mod d)` for some
    /// `0 <= l < d {n/d}`; zero at `n = 0`.
    pub fn delta_in(&self, i: usize, n: u64) -> u8 {
        if n == 0 {
            return 0;
        }
        let d = self.d;
        let ui = self.block_digit(i);
        let (p, target) = (self.p % d, n % d);
        let hit = (0..n % d).any(|l| (p * l + ui) % d == target);
        u8::from(hit)
    }

    /// `δ_<^{(i)}(l)`: 1 iff `{l/d}' < {(p l + u_{b-i})/d}'`.
    pub fn delta_lt(&self, i: usize, l: u64) -> u8 {
        let d = self.d as i64;
        let ui = self.block_digit(i) as i64;
        let lhs = frac_prime_num(l as i64, d);
        let rhs = frac_prime_num(self.p as i64 * l as i64 + ui, d);
        u8::from(lhs < rhs)
    }

    /// `b ω(n)`, always an integer.
    pub fn b_omega(&self, n: u64) -> i64 {
        let d = self.d as i64;
        let pm1 = self.p as i64 - 1;
        (0..self.b as usize)
            .map(|i| {
                let ui = self.block_digit(i) as i64;
                ceil_div(pm1 * n as i64 + ui, d) - i64::from(self.delta_in(i, n))
            })
            .sum()
    }

    /// The slope `ω(n)` of the arithmetic polygon on `[n, n + 1]`.
    pub fn omega(&self, n: u64) -> Rational {
        crate::arith::rat(self.b_omega(n), self.b as i64)
    }

    /// `b P(n) = Σ_{m<n} b ω(m)`.
    pub fn b_arith_value(&self, n: u64) -> i64 {
        (0..n).map(|m| self.b_omega(m)).sum()
    }

    /// Sum of one period of digits, `u_0 + ... + u_{b-1}`.
    pub fn digit_sum_period(&self) -> u64 {
        self.digits[..self.b as usize].iter().sum()
    }

    /// Both sides of the counting identity for `Σ_{l<n} (δ_<(l) - δ_∈(l))`:
    /// with `μ = {(n-1)/d}`, the right side counts `l < n` where `{l/d}' <= μ <
    /// {(pl+u)/d}'` minus those where `{l/d}' > μ >= {(pl+u)/d}'`.
    pub fn delta_balance(&self, i: usize, n: u64) -> (i64, i64) {
        let d = self.d as i64;
        let ui = self.block_digit(i) as i64;
        let lhs = (0..n).map(|l| i64::from(self.delta_lt(i, l)) - i64::from(self.delta_in(i, l))).sum();
        let mu = (n as i64 - 1).rem_euclid(d);
        let rhs = (0..n as i64)
            .map(|l| {
                let x = frac_prime_num(l, d);
                let y = frac_prime_num(self.p as i64 * l + ui, d);
                i64::from(x <= mu && mu < y) - i64::from(x > mu && mu >= y)
            })
            .sum();
        (lhs, rhs)
    }

    /// Both sides of `Σ_{l<n} (⌈((p-1)l + u)/d⌉ - δ_∈(l)) = Σ_{l<n} ⌈(pl + u - (n-1))/d⌉`.
    /// The two agree for `1 <= n <= d`.
    pub fn ceiling_balance(&self, i: usize, n: u64) -> (i64, i64) {
        let (p, d) = (self.p as i64, self.d as i64);
        let ui = self.block_digit(i) as i64;
        let lhs = (0..n as i64)
            .map(|l| ceil_div((p - 1) * l + ui, d) - i64::from(self.delta_in(i, l as u64)))
            .sum();
        let rhs = (0..n as i64).map(|l| ceil_div(p * l + ui - (n as i64 - 1), d)).sum();
        (lhs, rhs)
    }
}

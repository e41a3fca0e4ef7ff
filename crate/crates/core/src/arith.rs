//! Integer and rational helpers shared by every module.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut k = 2u128;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            while n.is_multiple_of(k) {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `⌈a / b⌉` for `b > 0`.
pub fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u128, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// `p`-adic valuation of a nonzero integer.
pub fn val_p(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// `p^n` if it stays below `2^63`.
pub fn checked_pow(p: u64, n: u32) -> Option<u64> {
    let v = p.checked_pow(n)?;
    (v < (1u64 << 63)).then_some(v)
}

/// Reduce a rational with denominator prime to `m` into `Z/m`.
pub fn rational_mod(x: &Rational, m: u64) -> Option<u64> {
    let mb = BigInt::from(m);
    let num = x.numer().mod_floor_big(&mb);
    let den = x.denom().mod_floor_big(&mb);
    let den = u64::try_from(den).ok()?;
    let num = u64::try_from(num).ok()?;
    let inv = inv_mod(den, m)?;
    Some(mul_mod(num, inv, m))
}

trait ModFloor {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

/// `{x}' = 1 + x - ⌈x⌉`: the fractional part, except that integers map to 1.
pub fn frac_prime(x: &Rational) -> Rational {
    Rational::one() + x - x.ceil()
}

/// Numerator of `{x/d}'` over the common denominator `d`, for integer `x`.
/// The result lies in `1..=d`.
pub fn frac_prime_num(x: i64, d: i64) -> i64 {
    let r = x.rem_euclid(d);
    if r == 0 {
        d
    } else {
        r
    }
}

pub fn binomial_mod(n: u64, k: u64, m: u64) -> u64 {
    // Pascal row; n is at most p here.
    let mut row = alloc::vec![0u64; (n + 1) as usize];
    row[0] = 1 % m;
    for i in 1..=n as usize {
        for j in (1..=i).rev() {
            row[j] = add_mod(row[j], row[j - 1], m);
        }
    }
    row[k as usize]
}

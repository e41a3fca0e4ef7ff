//! Finite fields `F_{p^e}` in a polynomial basis.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{inv_mod, is_prime, mul_mod, prime_factors};
use crate::error::{Error, Result};

/// Polynomial arithmetic over `F_p`, coefficients low degree first.
pub(crate) mod fpoly {
    use super::*;

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder modulo a nonzero polynomial.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p).expect("nonzero leading coefficient");
        while r.len() > dm {
            let k = r.len() - 1;
            let c = mul_mod(r[k], lead_inv, p);
            if c != 0 {
                for (j, &mj) in m.iter().enumerate() {
                    let idx = k - dm + j;
                    r[idx] = (r[idx] + p - mul_mod(c, mj, p)) % p;
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// `x^{p^k} mod m`.
    pub fn frobenius_power_of_x(m: &[u64], k: usize, p: u64) -> Vec<u64> {
        let mut cur = rem(&[0, 1], m, p);
        for _ in 0..k {
            cur = pow_mod_poly(&cur, p as u128, m, p);
        }
        cur
    }

    pub fn pow_mod_poly(base: &[u64], mut exp: u128, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = rem(&[1], m, p);
        let mut b = rem(base, m, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            exp >>= 1;
        }
        acc
    }

    /// Rabin's test for a monic polynomial of degree `e >= 1`.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let e = m.len() - 1;
        let x = rem(&[0, 1], m, p);
        if frobenius_power_of_x(m, e, p) != x {
            return false;
        }
        for r in prime_factors(e as u128) {
            let h = frobenius_power_of_x(m, e / r as usize, p);
            let g = gcd(&sub(&h, &x, p), m, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

/// Element of `F_{p^e}`: coefficient vector of length `e` in the basis
/// `1, t, ..., t^{e-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(pub Vec<u64>);

/// The field `F_p[t] / (m(t))` for a monic irreducible `m` of degree `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqField {
    p: u64,
    e: usize,
    modulus: Vec<u64>,
}

impl FqField {
    /// Build `F_{p^e}`. Without an explicit modulus the smallest monic
    /// irreducible polynomial is used, ordering candidates by the base-p
    /// integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` of their lower coefficients.
    pub fn new(p: u64, e: usize, modulus: Option<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        let size = (p as u128).checked_pow(e as u32).ok_or(Error::ParameterOverflow)?;
        if size > u64::MAX as u128 {
            return Err(Error::ParameterOverflow);
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e + 1 {
                    return Err(Error::ModulusDegree { expected: e, got: m.len().saturating_sub(1) });
                }
                let m: Vec<u64> = m.into_iter().map(|c| c % p).collect();
                if m[e] != 1 {
                    return Err(Error::ModulusNotMonic);
                }
                if !fpoly::is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus);
                }
                m
            }
            None => Self::default_modulus(p, e),
        };
        Ok(Self { p, e, modulus })
    }

    fn default_modulus(p: u64, e: usize) -> Vec<u64> {
        let mut code = 0u64;
        loop {
            let mut m = Vec::with_capacity(e + 1);
            let mut c = code;
            for _ in 0..e {
                m.push(c % p);
                c /= p;
            }
            m.push(1);
            if fpoly::is_irreducible(&m, p) {
                return m;
            }
            code += 1;
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.e as u32)
    }

    pub fn zero(&self) -> FqElem {
        FqElem(vec![0; self.e])
    }

    pub fn one(&self) -> FqElem {
        self.from_prime_field(1)
    }

    pub fn from_prime_field(&self, c: u64) -> FqElem {
        let mut v = vec![0; self.e];
        v[0] = c % self.p;
        FqElem(v)
    }

    /// The generator `t` of the polynomial basis.
    pub fn gen(&self) -> FqElem {
        self.from_poly(&[0, 1])
    }

    /// Element with base-p code `Σ c_i p^i`.
    pub fn from_code(&self, code: u64) -> Result<FqElem> {
        if code >= self.size() {
            return Err(Error::CoefficientOutOfRange { code, q: self.size() });
        }
        let mut v = Vec::with_capacity(self.e);
        let mut c = code;
        for _ in 0..self.e {
            v.push(c % self.p);
            c /= self.p;
        }
        Ok(FqElem(v))
    }

    pub fn code(&self, x: &FqElem) -> u64 {
        x.0.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn from_poly(&self, poly: &[u64]) -> FqElem {
        let reduced: Vec<u64> = poly.iter().map(|c| c % self.p).collect();
        let mut r = fpoly::rem(&reduced, &self.modulus, self.p);
        r.resize(self.e, 0);
        FqElem(r)
    }

    pub fn is_zero(&self, x: &FqElem) -> bool {
        x.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &FqElem, y: &FqElem) -> FqElem {
        FqElem(x.0.iter().zip(&y.0).map(|(a, b)| (a + b) % self.p).collect())
    }

    pub fn sub(&self, x: &FqElem, y: &FqElem) -> FqElem {
        FqElem(x.0.iter().zip(&y.0).map(|(a, b)| (a + self.p - b) % self.p).collect())
    }

    pub fn neg(&self, x: &FqElem) -> FqElem {
        FqElem(x.0.iter().map(|a| (self.p - a) % self.p).collect())
    }

    pub fn mul(&self, x: &FqElem, y: &FqElem) -> FqElem {
        self.from_poly(&fpoly::mul(&x.0, &y.0, self.p))
    }

    pub fn scale(&self, c: u64, x: &FqElem) -> FqElem {
        FqElem(x.0.iter().map(|a| mul_mod(*a, c % self.p, self.p)).collect())
    }

    pub fn pow(&self, x: &FqElem, mut exp: u128) -> FqElem {
        let mut acc = self.one();
        let mut b = x.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: &FqElem) -> Option<FqElem> {
        (!self.is_zero(x)).then(|| self.pow(x, self.size() as u128 - 2))
    }

    pub fn frobenius(&self, x: &FqElem) -> FqElem {
        self.pow(x, self.p as u128)
    }

    /// `Tr_{F_{p^e}/F_p}(x)` as an integer in `[0, p)`.
    pub fn trace(&self, x: &FqElem) -> u64 {
        let mut acc = self.zero();
        let mut cur = x.clone();
        for _ in 0..self.e {
            acc = self.add(&acc, &cur);
            cur = self.frobenius(&cur);
        }
        debug_assert!(acc.0[1..].iter().all(|&c| c == 0));
        acc.0[0]
    }

    /// `Norm_{F_{p^e}/F_p}(x)` as an integer in `[0, p)`.
    pub fn norm(&self, x: &FqElem) -> u64 {
        let exp = (self.size() as u128 - 1) / (self.p as u128 - 1);
        self.pow(x, exp).0[0]
    }

    /// Multiplicative order of a nonzero element.
    pub fn is_primitive(&self, x: &FqElem) -> bool {
        if self.is_zero(x) {
            return false;
        }
        let n = self.size() as u128 - 1;
        let one = self.one();
        prime_factors(n).into_iter().all(|r| self.pow(x, n / r) != one)
    }

    /// The primitive element with the smallest code.
    pub fn primitive_element(&self) -> FqElem {
        (1..self.size())
            .map(|c| self.from_code(c).expect("code in range"))
            .find(|x| self.is_primitive(x))
            .expect("finite fields have primitive elements")
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.size()).map(move |c| self.from_code(c).expect("code in range"))
    }

    /// Evaluate an `F_p`-coefficient polynomial (low degree first) at `x`.
    pub fn eval_prime_poly(&self, poly: &[u64], x: &FqElem) -> FqElem {
        poly.iter().rev().fold(self.zero(), |acc, &c| {
            self.add(&self.mul(&acc, x), &self.from_prime_field(c))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field() {
        let f = FqField::new(5, 1, None).unwrap();
        assert_eq!(f.size(), 5);
        let two = f.from_code(2).unwrap();
        assert_eq!(f.code(&f.mul(&two, &two)), 4);
        assert_eq!(f.code(&f.inv(&two).unwrap()), 3);
    }

    #[test]
    fn f9_with_supplied_modulus() {
        let f = FqField::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        let t = f.gen();
        assert_eq!(f.mul(&t, &t), f.from_prime_field(2));
        assert_eq!(FqField::new(3, 2, Some(vec![2, 0, 1])), Err(Error::ReducibleModulus));
        assert_eq!(FqField::new(3, 2, Some(vec![1, 0, 2])), Err(Error::ModulusNotMonic));
    }

    #[test]
    fn default_modulus_is_smallest_irreducible() {
        assert_eq!(FqField::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FqField::new(2, 3, None).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FqField::new(7, 1, None).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn field_axioms_small() {
        let f = FqField::new(3, 3, None).unwrap();
        let els: Vec<FqElem> = f.elements().collect();
        for x in &els {
            if !f.is_zero(x) {
                assert_eq!(f.mul(x, &f.inv(x).unwrap()), f.one());
            }
            assert_eq!(f.pow(x, 27), *x);
            for y in els.iter().step_by(5) {
                assert_eq!(f.frobenius(&f.mul(x, y)), f.mul(&f.frobenius(x), &f.frobenius(y)));
                assert_eq!(f.frobenius(&f.add(x, y)), f.add(&f.frobenius(x), &f.frobenius(y)));
            }
        }
    }

    #[test]
    fn trace_is_balanced() {
        let f = FqField::new(5, 2, None).unwrap();
        let mut counts = [0; 5];
        for x in f.elements() {
            counts[f.trace(&x) as usize] += 1;
        }
        assert_eq!(counts, [5; 5]);
    }

    #[test]
    fn primitive_element_generates() {
        let f = FqField::new(5, 2, None).unwrap();
        let g = f.primitive_element();
        let mut seen = alloc::collections::BTreeSet::new();
        let mut cur = f.one();
        for _ in 0..24 {
            seen.insert(f.code(&cur));
            cur = f.mul(&cur, &g);
        }
        assert_eq!(seen.len(), 24);
    }
}

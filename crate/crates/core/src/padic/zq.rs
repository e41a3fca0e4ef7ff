//! The unramified ring `Z_q = W(F_q)` truncated modulo `p^N`.
//!
//! Elements are polynomials of degree `< a` over `Z/p^N` reduced modulo the
//! lift of the `F_q` modulus (same integer coefficients, read in `Z/p^N`).

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{add_mod, checked_pow, mul_mod, sub_mod, val_p};
use crate::error::{Error, Result};
use crate::padic::field::{FqElem, FqField};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZqElem(pub Vec<u64>);

#[derive(Debug, Clone)]
pub struct ZqRing {
    field: FqField,
    prec: u32,
    pn: u64,
    modulus: Vec<u64>,
    /// σ(t): the root of the modulus congruent to `t^p`.
    sigma_gen: ZqElem,
}

impl ZqRing {
    pub fn new(field: FqField, prec: u32) -> Result<Self> {
        let p = field.p();
        let pn = checked_pow(p, prec)
            .filter(|_| prec >= 1)
            .ok_or(Error::PrecisionOverflow { p, n: prec })?;
        let modulus = field.modulus().to_vec();
        let mut ring = Self { field, prec, pn, modulus, sigma_gen: ZqElem(Vec::new()) };
        ring.sigma_gen = ring.frobenius_of_generator();
        Ok(ring)
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    /// Degree `a` of `F_q` over `F_p`.
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// The working modulus `p^N`.
    pub fn modulus_pn(&self) -> u64 {
        self.pn
    }

    pub fn zero(&self) -> ZqElem {
        ZqElem(vec![0; self.degree()])
    }

    pub fn one(&self) -> ZqElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> ZqElem {
        let mut v = vec![0; self.degree()];
        v[0] = c % self.pn;
        ZqElem(v)
    }

    pub fn from_i64(&self, c: i64) -> ZqElem {
        self.from_u64(c.rem_euclid(self.pn as i64) as u64)
    }

    /// Naive lift of a residue: same coefficients, read in `Z/p^N`.
    pub fn lift(&self, x: &FqElem) -> ZqElem {
        ZqElem(x.0.clone())
    }

    pub fn reduce(&self, x: &ZqElem) -> FqElem {
        FqElem(x.0.iter().map(|c| c % self.p()).collect())
    }

    pub fn is_zero(&self, x: &ZqElem) -> bool {
        x.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &ZqElem, y: &ZqElem) -> ZqElem {
        ZqElem(x.0.iter().zip(&y.0).map(|(a, b)| add_mod(*a, *b, self.pn)).collect())
    }

    pub fn sub(&self, x: &ZqElem, y: &ZqElem) -> ZqElem {
        ZqElem(x.0.iter().zip(&y.0).map(|(a, b)| sub_mod(*a, *b, self.pn)).collect())
    }

    pub fn neg(&self, x: &ZqElem) -> ZqElem {
        ZqElem(x.0.iter().map(|a| sub_mod(0, *a, self.pn)).collect())
    }

    pub fn scale(&self, c: u64, x: &ZqElem) -> ZqElem {
        ZqElem(x.0.iter().map(|a| mul_mod(*a, c, self.pn)).collect())
    }

    pub fn add_assign(&self, acc: &mut ZqElem, x: &ZqElem) {
        for (a, b) in acc.0.iter_mut().zip(&x.0) {
            *a = add_mod(*a, *b, self.pn);
        }
    }

    pub fn mul(&self, x: &ZqElem, y: &ZqElem) -> ZqElem {
        let a = self.degree();
        if a == 1 {
            return ZqElem(vec![mul_mod(x.0[0], y.0[0], self.pn)]);
        }
        let m = self.pn as u128;
        let mut prod = vec![0u128; 2 * a - 1];
        for (i, &xi) in x.0.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u128 * yj as u128) % m;
            }
        }
        // monic modulus: t^a = -Σ_{k<a} m_k t^k
        for k in (a..2 * a - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..a {
                let sub = c * self.modulus[j] as u128 % m;
                let idx = k - a + j;
                prod[idx] = (prod[idx] + m - sub) % m;
            }
        }
        ZqElem(prod[..a].iter().map(|&c| c as u64).collect())
    }

    pub fn pow(&self, x: &ZqElem, mut exp: u128) -> ZqElem {
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

    /// `min_i v_p(c_i)`, or `None` for an element that is zero mod `p^N`.
    pub fn valuation(&self, x: &ZqElem) -> Option<u32> {
        x.0.iter().filter(|&&c| c != 0).map(|&c| val_p(c, self.p())).min()
    }

    pub fn is_unit(&self, x: &ZqElem) -> bool {
        self.valuation(x) == Some(0)
    }

    pub fn inv(&self, x: &ZqElem) -> Result<ZqElem> {
        let r = self.field.inv(&self.reduce(x)).ok_or(Error::NotAUnit)?;
        let mut y = self.lift(&r);
        let two = self.from_u64(2);
        // y <- y (2 - x y); precision doubles each round
        for _ in 0..=self.prec.ilog2() + 1 {
            y = self.mul(&y, &self.sub(&two, &self.mul(x, &y)));
        }
        Ok(y)
    }

    /// Teichmüller representative: the unique `(q-1)`-th root of unity (or 0)
    /// reducing to `x`, obtained by iterating `t <- t^q` from any lift.
    pub fn teichmuller(&self, x: &FqElem) -> ZqElem {
        let q = self.field.size() as u128;
        let mut t = self.lift(x);
        for _ in 0..self.prec {
            let next = self.pow(&t, q);
            if next == t {
                break;
            }
            t = next;
        }
        t
    }

    fn eval_modulus(&self, x: &ZqElem) -> ZqElem {
        self.modulus.iter().rev().fold(self.zero(), |acc, &c| {
            self.add(&self.mul(&acc, x), &self.from_u64(c))
        })
    }

    fn eval_modulus_derivative(&self, x: &ZqElem) -> ZqElem {
        let deriv: Vec<u64> = self.modulus.iter().enumerate().skip(1).map(|(k, &c)| c * k as u64).collect();
        deriv.iter().rev().fold(self.zero(), |acc, &c| self.add(&self.mul(&acc, x), &self.from_u64(c)))
    }

    fn frobenius_of_generator(&self) -> ZqElem {
        if self.degree() == 1 {
            // Z_q = Z_p, σ = id; the "generator" is the constant root of the modulus
            return self.from_u64((self.pn - self.modulus[0] % self.pn) % self.pn);
        }
        let t = ZqElem({
            let mut v = vec![0; self.degree()];
            v[1] = 1;
            v
        });
        let mut x = self.pow(&t, self.p() as u128);
        for _ in 0..=self.prec.ilog2() + 1 {
            let fx = self.eval_modulus(&x);
            let dfx = self.eval_modulus_derivative(&x);
            let step = self.mul(&fx, &self.inv(&dfx).expect("separable modulus"));
            x = self.sub(&x, &step);
        }
        x
    }

    /// The Frobenius automorphism `σ`, lifting `x -> x^p` on `F_q`.
    pub fn frobenius(&self, x: &ZqElem) -> ZqElem {
        if self.degree() == 1 {
            return x.clone();
        }
        x.0.iter().rev().fold(self.zero(), |acc, &c| {
            self.add(&self.mul(&acc, &self.sigma_gen), &self.from_u64(c))
        })
    }

    /// `Norm_{Z_q/Z_p}(x) = Π_{i<a} σ^i(x)`, returned as an integer mod `p^N`.
    pub fn norm(&self, x: &ZqElem) -> u64 {
        let mut acc = x.clone();
        let mut conj = x.clone();
        for _ in 1..self.degree() {
            conj = self.frobenius(&conj);
            acc = self.mul(&acc, &conj);
        }
        debug_assert!(acc.0[1..].iter().all(|&c| c == 0));
        acc.0[0]
    }
}

//! `Z_q[π]` with `π = ζ_p - 1`, truncated modulo `p^N`.
//!
//! Elements are written in the basis `1, π, ..., π^{p-2}`; products are reduced
//! with the Eisenstein relation `((1 + π)^p - 1) / π = 0`, i.e.
//! `π^{p-1} = -Σ_{k=1}^{p-1} C(p, k) π^{k-1}`.
//!
//! Because `ord_π(p) = p - 1` and the basis exponents are distinct modulo
//! `p - 1`, the valuation of `Σ c_j π^j` is `min_j ((p - 1) v_p(c_j) + j)`. An
//! element known modulo `p^N` has its valuation determined below
//! `cap = (p - 1) N`; anything else is reported as [`Valuation::AtLeast`].

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{binomial_mod, sub_mod};
use crate::padic::zq::{ZqElem, ZqRing};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiElem(pub Vec<ZqElem>);

/// π-adic valuation of a finite-precision element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Exact(u64),
    /// Zero to working precision: the true valuation is at least this cap.
    AtLeast(u64),
}

impl Valuation {
    pub fn exact(self) -> Option<u64> {
        match self {
            Valuation::Exact(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }

    /// Lower bound valid in both cases.
    pub fn lower_bound(self) -> u64 {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }

    /// Minimum with an extra precision cap (e.g. a series truncation order).
    pub fn capped(self, cap: u64) -> Self {
        match self {
            Valuation::Exact(v) if v < cap => Valuation::Exact(v),
            Valuation::Exact(_) => Valuation::AtLeast(cap),
            Valuation::AtLeast(v) => Valuation::AtLeast(v.min(cap)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PiRing {
    zq: ZqRing,
    /// `π^{p-1} = Σ_{k<p-1} relation[k] π^k`, integers mod `p^N`.
    relation: Vec<u64>,
}

impl PiRing {
    pub fn new(zq: ZqRing) -> Self {
        let p = zq.p();
        let m = zq.modulus_pn();
        let relation = (1..p).map(|k| sub_mod(0, binomial_mod(p, k, m), m)).collect();
        Self { zq, relation }
    }

    pub fn zq(&self) -> &ZqRing {
        &self.zq
    }

    pub fn p(&self) -> u64 {
        self.zq.p()
    }

    fn rank(&self) -> usize {
        (self.p() - 1) as usize
    }

    /// Valuations strictly below this are exact.
    pub fn cap(&self) -> u64 {
        (self.p() - 1) * self.zq.precision() as u64
    }

    pub fn zero(&self) -> PiElem {
        PiElem(vec![self.zq.zero(); self.rank()])
    }

    pub fn one(&self) -> PiElem {
        self.from_zq(self.zq.one())
    }

    pub fn from_zq(&self, c: ZqElem) -> PiElem {
        let mut v = self.zero();
        v.0[0] = c;
        v
    }

    pub fn from_i64(&self, c: i64) -> PiElem {
        self.from_zq(self.zq.from_i64(c))
    }

    /// The uniformizer `π = ζ_p - 1`.
    pub fn pi(&self) -> PiElem {
        if self.rank() == 1 {
            // p = 2: π = -2
            return self.from_i64(-2);
        }
        let mut v = self.zero();
        v.0[1] = self.zq.one();
        v
    }

    pub fn zeta(&self) -> PiElem {
        self.add(&self.one(), &self.pi())
    }

    /// `[ζ^0, ζ^1, ..., ζ^{p-1}]`.
    pub fn zeta_powers(&self) -> Vec<PiElem> {
        let z = self.zeta();
        let mut out = Vec::with_capacity(self.p() as usize);
        let mut cur = self.one();
        for _ in 0..self.p() {
            out.push(cur.clone());
            cur = self.mul(&cur, &z);
        }
        out
    }

    pub fn is_zero(&self, x: &PiElem) -> bool {
        x.0.iter().all(|c| self.zq.is_zero(c))
    }

    pub fn add(&self, x: &PiElem, y: &PiElem) -> PiElem {
        PiElem(x.0.iter().zip(&y.0).map(|(a, b)| self.zq.add(a, b)).collect())
    }

    pub fn add_assign(&self, acc: &mut PiElem, x: &PiElem) {
        for (a, b) in acc.0.iter_mut().zip(&x.0) {
            self.zq.add_assign(a, b);
        }
    }

    pub fn sub(&self, x: &PiElem, y: &PiElem) -> PiElem {
        PiElem(x.0.iter().zip(&y.0).map(|(a, b)| self.zq.sub(a, b)).collect())
    }

    pub fn neg(&self, x: &PiElem) -> PiElem {
        PiElem(x.0.iter().map(|a| self.zq.neg(a)).collect())
    }

    pub fn scale_zq(&self, c: &ZqElem, x: &PiElem) -> PiElem {
        PiElem(x.0.iter().map(|a| self.zq.mul(c, a)).collect())
    }

    pub fn scale_int(&self, c: u64, x: &PiElem) -> PiElem {
        PiElem(x.0.iter().map(|a| self.zq.scale(c, a)).collect())
    }

    pub fn mul(&self, x: &PiElem, y: &PiElem) -> PiElem {
        let r = self.rank();
        let mut prod = vec![self.zq.zero(); 2 * r - 1];
        for (i, a) in x.0.iter().enumerate() {
            if self.zq.is_zero(a) {
                continue;
            }
            for (j, b) in y.0.iter().enumerate() {
                if self.zq.is_zero(b) {
                    continue;
                }
                let t = self.zq.mul(a, b);
                self.zq.add_assign(&mut prod[i + j], &t);
            }
        }
        for k in (r..2 * r - 1).rev() {
            if self.zq.is_zero(&prod[k]) {
                continue;
            }
            let c = core::mem::replace(&mut prod[k], self.zq.zero());
            for (j, &rel) in self.relation.iter().enumerate() {
                if rel != 0 {
                    let t = self.zq.scale(rel, &c);
                    self.zq.add_assign(&mut prod[k - r + j], &t);
                }
            }
        }
        prod.truncate(r);
        PiElem(prod)
    }

    pub fn pow(&self, x: &PiElem, mut exp: u64) -> PiElem {
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

    pub fn valuation(&self, x: &PiElem) -> Valuation {
        let pm1 = self.p() - 1;
        let best = x
            .0
            .iter()
            .enumerate()
            .filter_map(|(j, c)| self.zq.valuation(c).map(|v| pm1 * v as u64 + j as u64))
            .min();
        match best {
            Some(v) if v < self.cap() => Valuation::Exact(v),
            _ => Valuation::AtLeast(self.cap()),
        }
    }

    /// Apply the Frobenius of `Z_q` coefficientwise (fixing `π`).
    pub fn frobenius(&self, x: &PiElem) -> PiElem {
        PiElem(x.0.iter().map(|c| self.zq.frobenius(c)).collect())
    }

    /// Equality modulo `π^k` for `k <= cap`.
    pub fn congruent(&self, x: &PiElem, y: &PiElem, k: u64) -> bool {
        self.valuation(&self.sub(x, y)).lower_bound() >= k.min(self.cap())
    }
}

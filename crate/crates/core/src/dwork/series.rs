//! Truncated power series in a formal uniformizer `π` over `Z_q / p^N`.

use alloc::vec::Vec;

use crate::padic::cyclotomic::{PiElem, PiRing, Valuation};
use crate::padic::zq::{ZqElem, ZqRing};

/// `Σ_{j<M} c_j π^j`; terms of order `>= M` are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiSeries {
    pub coeffs: Vec<ZqElem>,
}

impl PiSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, j: usize) -> &ZqElem {
        &self.coeffs[j]
    }
}

#[derive(Debug, Clone)]
pub struct SeriesRing {
    zq: ZqRing,
    m: usize,
}

impl SeriesRing {
    pub fn new(zq: ZqRing, m: usize) -> Self {
        Self { zq, m }
    }

    pub fn zq(&self) -> &ZqRing {
        &self.zq
    }

    /// Truncation order `M`.
    pub fn truncation(&self) -> usize {
        self.m
    }

    pub fn zero(&self) -> PiSeries {
        PiSeries { coeffs: (0..self.m).map(|_| self.zq.zero()).collect() }
    }

    pub fn one(&self) -> PiSeries {
        let mut s = self.zero();
        if self.m > 0 {
            s.coeffs[0] = self.zq.one();
        }
        s
    }

    pub fn is_zero(&self, x: &PiSeries) -> bool {
        x.coeffs.iter().all(|c| self.zq.is_zero(c))
    }

    pub fn add(&self, x: &PiSeries, y: &PiSeries) -> PiSeries {
        PiSeries { coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| self.zq.add(a, b)).collect() }
    }

    pub fn add_assign(&self, acc: &mut PiSeries, x: &PiSeries) {
        for (a, b) in acc.coeffs.iter_mut().zip(&x.coeffs) {
            self.zq.add_assign(a, b);
        }
    }

    pub fn sub(&self, x: &PiSeries, y: &PiSeries) -> PiSeries {
        PiSeries { coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| self.zq.sub(a, b)).collect() }
    }

    pub fn neg(&self, x: &PiSeries) -> PiSeries {
        PiSeries { coeffs: x.coeffs.iter().map(|a| self.zq.neg(a)).collect() }
    }

    pub fn mul(&self, x: &PiSeries, y: &PiSeries) -> PiSeries {
        let mut out = self.zero();
        for (i, a) in x.coeffs.iter().enumerate() {
            if self.zq.is_zero(a) {
                continue;
            }
            for (j, b) in y.coeffs.iter().take(self.m - i).enumerate() {
                if !self.zq.is_zero(b) {
                    let t = self.zq.mul(a, b);
                    self.zq.add_assign(&mut out.coeffs[i + j], &t);
                }
            }
        }
        out
    }

    /// Index of the first nonzero coefficient, or `AtLeast(M)`.
    pub fn valuation(&self, x: &PiSeries) -> Valuation {
        match x.coeffs.iter().position(|c| !self.zq.is_zero(c)) {
            Some(j) => Valuation::Exact(j as u64),
            None => Valuation::AtLeast(self.m as u64),
        }
    }

    /// Substitute an element of `Z_q[ζ_p]` for `π`. The result is exact modulo
    /// `π^M` when `x` has positive valuation.
    pub fn specialize(&self, ring: &PiRing, x: &PiSeries, at: &PiElem) -> PiElem {
        let mut acc = ring.zero();
        for c in x.coeffs.iter().rev() {
            acc = ring.add(&ring.mul(&acc, at), &ring.from_zq(c.clone()));
        }
        acc
    }
}

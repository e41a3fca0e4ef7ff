//! Sparse multivariate polynomials over `F_p` in `y_0, ..., y_d`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{add_mod, mul_mod};
use crate::error::{Error, Result};
use crate::padic::field::{FqElem, FqField};

pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    p: u64,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl SparsePolynomial {
    pub fn zero(p: u64, nvars: usize) -> Self {
        Self { p, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(p: u64, nvars: usize, c: u64) -> Self {
        let mut out = Self::zero(p, nvars);
        out.add_term(vec![0; nvars], c);
        out
    }

    pub fn monomial(p: u64, exps: Monomial, c: u64) -> Self {
        let mut out = Self::zero(p, exps.len());
        out.add_term(exps, c);
        out
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &[u32]) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: u64) {
        debug_assert_eq!(m.len(), self.nvars);
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let p = self.p;
        let entry = self.terms.entry(m);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = add_mod(*o.get(), c, p);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u64) -> Self {
        let mut out = Self::zero(self.p, self.nvars);
        for (m, a) in self.terms() {
            out.add_term(m.clone(), mul_mod(a, c % self.p, self.p));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.p, self.nvars);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                let m = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, mul_mod(c1, c2, self.p));
            }
        }
        out
    }

    /// Product that fails once the term count exceeds `budget`.
    pub fn mul_bounded(&self, other: &Self, budget: usize) -> Result<Self> {
        let out = self.mul(other);
        if out.len() > budget {
            return Err(Error::TermBudget { limit: budget });
        }
        Ok(out)
    }

    /// Largest exponent of `y_j` over all terms.
    pub fn degree_in(&self, j: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[j]).max()
    }

    /// Evaluate at `y = values` in `F_q` (coefficients embed via `F_p ⊂ F_q`).
    pub fn evaluate(&self, field: &FqField, values: &[FqElem]) -> Result<FqElem> {
        if values.len() != self.nvars {
            return Err(Error::CoefficientCount { expected: self.nvars, got: values.len() });
        }
        let mut acc = field.zero();
        for (m, c) in self.terms() {
            let mut t = field.from_prime_field(c);
            for (v, &e) in values.iter().zip(m) {
                if e > 0 {
                    t = field.mul(&t, &field.pow(v, e as u128));
                }
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }
}

impl fmt::Display for SparsePolynomial {
    /// Terms as `coeff * y_0^e0 * ... * y_d^ed`, skipping zero exponents and
    /// unit coefficients, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let rendered: Vec<String> = self.terms().map(|(m, c)| render_term(m, c)).collect();
        f.write_str(&rendered.join(" + "))
    }
}

fn render_term(m: &[u32], c: u64) -> String {
    let mut factors: Vec<String> = Vec::new();
    if c != 1 {
        factors.push(format!("{c}"));
    }
    for (j, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => factors.push(format!("y_{j}")),
            _ => factors.push(format!("y_{j}^{e}")),
        }
    }
    if factors.is_empty() {
        return String::from("1");
    }
    factors.join("*")
}

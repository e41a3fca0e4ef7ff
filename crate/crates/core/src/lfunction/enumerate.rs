//! Log/antilog tables for `F_{q^k}` and the per-polynomial count table
//! `counts[t][e] = #{x = g^i : Tr f(x) = t, i ≡ e mod (q - 1)}`.
//!
//! Elements of the big field are stored as discrete logs to a fixed primitive
//! element `g`, with [`ZERO`] as the sentinel for `0`. Addition uses Zech logs.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::padic::field::{FqElem, FqField};

/// Largest `q^k` the enumeration accepts.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

pub const ZERO: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct ExtensionTables {
    base: FqField,
    k: u32,
    /// `q^k`.
    size: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[n] = log(1 + g^n)`.
    zech: Vec<u32>,
    /// Absolute trace of `g^i`, indexed by `i`.
    trace: Vec<u8>,
    /// Log of the image of each base-field element, indexed by its code.
    embed: Vec<u32>,
    /// Base-field code of `Norm(g) = g^{(q^k - 1)/(q - 1)}`.
    norm_gen: u64,
}

impl ExtensionTables {
    pub fn new(base: &FqField, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        let (p, a) = (base.p(), base.degree());
        let size = (base.size() as u128).checked_pow(k).unwrap_or(u128::MAX);
        if size > ENUMERATION_LIMIT as u128 {
            return Err(Error::EnumerationGuard { size, limit: ENUMERATION_LIMIT as u128 });
        }
        let size = size as u64;
        let big = FqField::new(p, a * k as usize, None)?;
        let order = (size - 1) as usize;
        let g = big.primitive_element();

        let mut exp = vec![0u32; order];
        let mut log = vec![ZERO; size as usize];
        let mut cur = big.one();
        for (i, slot) in exp.iter_mut().enumerate() {
            let code = big.code(&cur);
            *slot = code as u32;
            log[code as usize] = i as u32;
            cur = big.mul(&cur, &g);
        }

        let zech = exp
            .iter()
            .map(|&code| {
                let d0 = code as u64 % p;
                let plus_one = code as u64 - d0 + (d0 + 1) % p;
                log[plus_one as usize]
            })
            .collect();

        let basis_trace: Vec<u64> = (0..big.degree())
            .map(|i| {
                let mut e = vec![0u64; i + 1];
                e[i] = 1;
                big.trace(&big.from_poly(&e))
            })
            .collect();
        let trace = exp
            .iter()
            .map(|&code| {
                let (mut c, mut t) = (code as u64, 0u64);
                for bt in &basis_trace {
                    t += (c % p) * bt;
                    c /= p;
                }
                (t % p) as u8
            })
            .collect();

        // a root θ of the base modulus inside the big field
        let q = base.size();
        let step = (order as u64 / (q - 1)) as usize;
        let theta = core::iter::once(big.zero())
            .chain((0..q - 1).map(|j| big.pow(&g, (j as usize * step) as u128)))
            .find(|x| big.is_zero(&big.eval_prime_poly(base.modulus(), x)))
            .expect("F_q embeds in F_{q^k}");
        let mut theta_pows = Vec::with_capacity(a);
        let mut tp = big.one();
        for _ in 0..a {
            theta_pows.push(tp.clone());
            tp = big.mul(&tp, &theta);
        }
        let embed: Vec<u32> = base
            .elements()
            .map(|x| {
                let img = x.0.iter().zip(&theta_pows).fold(big.zero(), |acc, (&c, t)| big.add(&acc, &big.scale(c, t)));
                log[big.code(&img) as usize]
            })
            .collect();
        let norm_gen = embed
            .iter()
            .position(|&l| l as usize == step)
            .expect("norm of a generator lies in F_q") as u64;

        Ok(Self { base: base.clone(), k, size, exp, log, zech, trace, embed, norm_gen })
    }

    pub fn base(&self) -> &FqField {
        &self.base
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    fn order(&self) -> u64 {
        self.size - 1
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == ZERO || y == ZERO {
            return ZERO;
        }
        ((x as u64 + y as u64) % self.order()) as u32
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        if x == ZERO {
            return y;
        }
        if y == ZERO {
            return x;
        }
        let n = (y as u64 + self.order() - x as u64) % self.order();
        match self.zech[n as usize] {
            ZERO => ZERO,
            z => ((x as u64 + z as u64) % self.order()) as u32,
        }
    }

    /// Log representation of a base-field element.
    pub fn embed(&self, x: &FqElem) -> u32 {
        self.embed[self.base.code(x) as usize]
    }

    /// Code (in the big field's polynomial basis) of `g^i`.
    pub fn exp_code(&self, i: u32) -> u64 {
        self.exp[i as usize] as u64
    }

    pub fn log_of_code(&self, code: u64) -> u32 {
        self.log[code as usize]
    }

    pub fn trace_of(&self, x: u32) -> u64 {
        if x == ZERO {
            0
        } else {
            self.trace[x as usize] as u64
        }
    }

    /// `Norm_{F_{q^k}/F_q}(g)` as a base-field element.
    pub fn norm_generator(&self) -> FqElem {
        self.base.from_code(self.norm_gen).expect("valid code")
    }

    /// `counts[t * (q - 1) + e]` for the polynomial with coefficients `coeffs`
    /// (low degree first) over the base field.
    pub fn counts(&self, coeffs: &[FqElem]) -> Vec<u64> {
        let p = self.base.p();
        let qm1 = self.base.size() - 1;
        let logs: Vec<u32> = coeffs.iter().map(|c| self.embed(c)).collect();
        let mut counts = vec![0u64; (p * qm1) as usize];
        for i in 0..self.order() as u32 {
            let fx = logs.iter().rev().fold(ZERO, |acc, &c| self.add(self.mul(acc, i), c));
            let t = self.trace_of(fx);
            counts[(t * qm1 + i as u64 % qm1) as usize] += 1;
        }
        counts
    }
}

//! Twisted character sums by enumeration, the L-polynomial they generate and
//! its π-adic Newton polygon.
//!
//! The sum over `F_{q^k}^×` is
//!
//! ```text
//! S_k = Σ_x ω(Norm x)^{-u} ζ_p^{Tr f(x)}
//! ```
//!
//! with `ω` the Teichmüller lift into `Z_q`. `L(s) = exp(Σ_k S_k s^k / k)` is a
//! polynomial of degree `d` when `p ∤ d`. All polygons here are measured in
//! π-units, `ord_π(ζ_p - 1) = 1`.

pub mod enumerate;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{ceil_div, checked_pow, int, inv_mod, Rational};
use crate::error::{Error, Result};
use crate::hasse::{check_coefficients, twist_field, HasseProduct};
use crate::padic::cyclotomic::{PiElem, PiRing, Valuation};
use crate::padic::field::{FqElem, FqField};
use crate::padic::zq::ZqRing;
use crate::polygon::{arithmetic_polygon, NewtonPolygon, Point};
use crate::twist::TwistData;

pub use enumerate::{ExtensionTables, ENUMERATION_LIMIT};

/// Guard digits added on top of the minimal p-adic precision.
pub const DEFAULT_GUARD: u32 = 4;

/// `f = a_0 + a_1 x + ... + a_d x^d` over `F_q` with `a_d != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyOverFq {
    pub coeffs: Vec<FqElem>,
}

impl PolyOverFq {
    pub fn new(field: &FqField, coeffs: Vec<FqElem>) -> Result<Self> {
        let lead = coeffs.last().ok_or(Error::CoefficientCount { expected: 1, got: 0 })?;
        if field.is_zero(lead) {
            return Err(Error::LeadingCoefficientZero);
        }
        Ok(Self { coeffs })
    }

    /// Coefficients given by their base-p codes in `field`.
    pub fn from_codes(field: &FqField, codes: &[u64]) -> Result<Self> {
        let coeffs = codes.iter().map(|&c| field.from_code(c)).collect::<Result<_>>()?;
        Self::new(field, coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `S_k` from a count table (see [`ExtensionTables::counts`]).
pub fn char_sum_from_counts(ring: &PiRing, tables: &ExtensionTables, td: &TwistData, counts: &[u64]) -> PiElem {
    let zq = ring.zq();
    let p = ring.p() as usize;
    let qm1 = (td.q - 1) as usize;
    let w = zq.teichmuller(&tables.norm_generator());
    // χ(Norm g^i) = ω(Norm g)^{i (q - 1 - u)}
    let step = zq.pow(&w, (td.q - 1 - td.u) as u128);
    let mut chi = Vec::with_capacity(qm1);
    let mut cur = zq.one();
    for _ in 0..qm1 {
        chi.push(cur.clone());
        cur = zq.mul(&cur, &step);
    }
    let zeta = ring.zeta_powers();
    let mut total = ring.zero();
    for t in 0..p {
        let mut inner = zq.zero();
        for (e, c) in chi.iter().enumerate() {
            let n = counts[t * qm1 + e];
            if n != 0 {
                zq.add_assign(&mut inner, &zq.scale(n, c));
            }
        }
        if !zq.is_zero(&inner) {
            ring.add_assign(&mut total, &ring.scale_zq(&inner, &zeta[t]));
        }
    }
    total
}

/// `S_k(f, u)` in `Z_q[ζ_p]` modulo `p^N`.
pub fn char_sum(ring: &PiRing, tables: &ExtensionTables, td: &TwistData, f: &PolyOverFq) -> PiElem {
    char_sum_from_counts(ring, tables, td, &tables.counts(&f.coeffs))
}

/// Coefficients `c_0 = 1, c_1, ..., c_D` of `L(s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LSeries {
    pub coeffs: Vec<PiElem>,
    /// True once the coefficients past the degree were checked to vanish.
    pub verified_polynomial: bool,
}

impl LSeries {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `exp(Σ_{k=1}^{D} S_k s^k / k)` up to `s^D` via `m c_m = Σ_{k=1}^{m} S_k c_{m-k}`.
pub fn series_from_power_sums(ring: &PiRing, sums: &[PiElem]) -> Result<Vec<PiElem>> {
    let pn = ring.zq().modulus_pn();
    let mut c = vec![ring.one()];
    for m in 1..=sums.len() {
        let mut acc = ring.zero();
        for k in 1..=m {
            ring.add_assign(&mut acc, &ring.mul(&sums[k - 1], &c[m - k]));
        }
        let inv = inv_mod(m as u64 % pn, pn).ok_or(Error::NonInvertible { m: m as u64 })?;
        c.push(ring.scale_int(inv, &acc));
    }
    Ok(c)
}

/// Shared state for computing L-polynomials of many `f` with the same `(p, a, d)`.
#[derive(Debug, Clone)]
pub struct LEngine {
    pub field: FqField,
    pub d: u64,
    tables: Vec<ExtensionTables>,
}

impl LEngine {
    /// Tables for `k = 1..=k_max`.
    pub fn new(field: &FqField, d: u64, k_max: u32) -> Result<Self> {
        if d.is_multiple_of(field.p()) {
            return Err(Error::PDividesDegree { p: field.p(), d });
        }
        let tables = (1..=k_max).map(|k| ExtensionTables::new(field, k)).collect::<Result<_>>()?;
        Ok(Self { field: field.clone(), d, tables })
    }

    /// Tables for `k <= d`, plus `k <= d + 2` for the vanishing check when they
    /// fit under the enumeration limit and `d + 2 < p`.
    pub fn for_degree(field: &FqField, d: u64) -> Result<Self> {
        let mut engine = Self::new(field, d, d as u32)?;
        for k in d as u32 + 1..=d as u32 + 2 {
            if k as u64 >= field.p() {
                break;
            }
            match ExtensionTables::new(field, k) {
                Ok(t) => engine.tables.push(t),
                Err(Error::EnumerationGuard { .. }) => break,
                Err(e) => return Err(e),
            }
        }
        Ok(engine)
    }

    pub fn tables(&self, k: u32) -> Option<&ExtensionTables> {
        self.tables.get(k as usize - 1)
    }

    pub fn max_k(&self) -> u32 {
        self.tables.len() as u32
    }

    /// Count tables for `k = 1..=max_k`; they do not depend on `u`.
    pub fn counts(&self, f: &PolyOverFq) -> Vec<Vec<u64>> {
        self.tables.iter().map(|t| t.counts(&f.coeffs)).collect()
    }

    pub fn l_polynomial_from_counts(&self, ring: &PiRing, td: &TwistData, counts: &[Vec<u64>]) -> Result<LSeries> {
        let sums: Vec<PiElem> = self
            .tables
            .iter()
            .zip(counts)
            .map(|(t, c)| char_sum_from_counts(ring, t, td, c))
            .collect();
        let mut coeffs = series_from_power_sums(ring, &sums)?;
        let deg = self.d as usize;
        let verified_polynomial = coeffs.len() > deg + 1;
        for (m, c) in coeffs.iter().enumerate().skip(deg + 1) {
            if !ring.is_zero(c) {
                return Err(Error::TheoremViolation(format!("L has a nonzero coefficient in degree {m}")));
            }
        }
        coeffs.truncate(deg + 1);
        Ok(LSeries { coeffs, verified_polynomial })
    }

    pub fn l_polynomial(&self, ring: &PiRing, td: &TwistData, f: &PolyOverFq) -> Result<LSeries> {
        self.l_polynomial_from_counts(ring, td, &self.counts(f))
    }
}

/// Lower hull of `(j, ord_π c_j)`. Coefficients that vanish to working
/// precision are dropped when the cap already lies on or above the hull of the
/// known points; otherwise [`Error::PrecisionExhausted`] asks for more digits.
pub fn newton_polygon_pi(ring: &PiRing, coeffs: &[PiElem]) -> Result<NewtonPolygon> {
    newton_polygon_from_valuations(&coeffs.iter().map(|c| ring.valuation(c)).collect::<Vec<_>>())
}

pub fn newton_polygon_from_valuations(vals: &[Valuation]) -> Result<NewtonPolygon> {
    let known: Vec<Point> = vals
        .iter()
        .enumerate()
        .filter_map(|(j, v)| v.exact().map(|e| (int(j as i64), int(e as i64))))
        .collect();
    let last = vals.len().checked_sub(1).ok_or(Error::EmptyPointSet)?;
    let cap = |v: &Valuation| match v {
        Valuation::AtLeast(c) | Valuation::Exact(c) => *c,
    };
    if vals[0].exact().is_none() || vals[last].exact().is_none() {
        return Err(Error::PrecisionExhausted { cap: cap(&vals[last]) });
    }
    let hull = NewtonPolygon::lower_hull(&known)?;
    for (j, v) in vals.iter().enumerate() {
        if let Valuation::AtLeast(c) = v {
            let at = hull.eval(&int(j as i64)).expect("inside the hull domain");
            if int(*c as i64) < at {
                return Err(Error::PrecisionExhausted { cap: *c });
            }
        }
    }
    Ok(hull)
}

/// First `n + 1` coefficients of `C(s) = Π_{j>=0} L(q^j s)`.
pub fn c_series_coeffs(ring: &PiRing, l: &[PiElem], n: usize, a: u32) -> Vec<PiElem> {
    let zq = ring.zq();
    let pn = zq.modulus_pn();
    let q = zq.field().size() % pn;
    let mut out: Vec<PiElem> = (0..=n).map(|i| if i == 0 { ring.one() } else { ring.zero() }).collect();
    // q^j vanishes mod p^N once a j >= N
    let j_max = ceil_div(zq.precision() as i64, a as i64) as u32;
    let mut qj = 1u64;
    for _ in 0..j_max {
        let mut factor = Vec::with_capacity(n + 1);
        let mut scale = 1u64;
        for m in 0..=n {
            factor.push(if m < l.len() { ring.scale_int(scale, &l[m]) } else { ring.zero() });
            scale = crate::arith::mul_mod(scale, qj, pn);
        }
        let mut next: Vec<PiElem> = (0..=n).map(|_| ring.zero()).collect();
        for (i, x) in out.iter().enumerate() {
            if ring.is_zero(x) {
                continue;
            }
            for (m, y) in factor.iter().enumerate().take(n + 1 - i) {
                ring.add_assign(&mut next[i + m], &ring.mul(x, y));
            }
        }
        out = next;
        qj = crate::arith::mul_mod(qj, q, pn);
    }
    out
}

/// p-adic precision for a polygon whose largest needed valuation is `y` (π-units).
pub fn precision_for(p: u64, y: u64, guard: u32) -> u32 {
    (y / (p - 1)) as u32 + 1 + guard
}

/// Build the cyclotomic ring over `F_q` at p-adic precision `n`.
pub fn pi_ring(field: &FqField, n: u32) -> Result<PiRing> {
    Ok(PiRing::new(ZqRing::new(field.clone(), n)?))
}

/// Outcome of comparing the π-adic polygon of `L` with the arithmetic target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub coeffs: Vec<u64>,
    pub np: NewtonPolygon,
    /// `a P` on `[0, d]`, π-units.
    pub target: NewtonPolygon,
    pub dominates: bool,
    pub endpoint_agrees: bool,
    pub equality: bool,
    pub generic: bool,
    /// `p > 4d - ε(u)`.
    pub hypothesis: bool,
    pub precision: u32,
    pub l_checked_polynomial: bool,
}

impl VerificationReport {
    pub fn biconditional(&self) -> bool {
        self.equality == self.generic
    }

    /// All checks the theory predicts (only binding when the hypothesis holds).
    pub fn passed(&self) -> bool {
        !self.hypothesis || (self.dominates && self.endpoint_agrees && self.biconditional())
    }
}

/// Reusable verifier for one twist: tables, Hasse product and target polygon.
#[derive(Debug, Clone)]
pub struct Verifier {
    pub td: TwistData,
    pub engine: LEngine,
    pub hasse: HasseProduct,
    pub target: NewtonPolygon,
    pub guard: u32,
    allow_small_p: bool,
}

impl Verifier {
    pub fn new(td: &TwistData, guard: u32, allow_small_p: bool) -> Result<Self> {
        let field = twist_field(td)?;
        let engine = LEngine::for_degree(&field, td.d)?;
        Self::with_engine(td, engine, guard, allow_small_p)
    }

    /// Reuse tables built for the same `(p, a, d)`.
    pub fn with_engine(td: &TwistData, engine: LEngine, guard: u32, allow_small_p: bool) -> Result<Self> {
        if td.d.is_multiple_of(td.p) {
            return Err(Error::PDividesDegree { p: td.p, d: td.d });
        }
        if !td.satisfies_prime_bound() && !allow_small_p {
            return Err(Error::SmallPrime { p: td.p, bound: td.prime_bound() });
        }
        let target = arithmetic_polygon(td, td.d)?.scale(&int(td.a as i64))?;
        let hasse = HasseProduct::new(td)?;
        Ok(Self { td: td.clone(), engine, hasse, target, guard, allow_small_p })
    }

    pub fn field(&self) -> &FqField {
        &self.engine.field
    }

    pub fn allows_small_p(&self) -> bool {
        self.allow_small_p
    }

    /// Largest valuation that must be read exactly: `a P(d)`.
    fn target_height(&self) -> u64 {
        let y: Rational = self.target.eval(&int(self.td.d as i64)).expect("target spans [0, d]");
        y.to_integer().try_into().unwrap_or(u64::MAX)
    }

    pub fn verify(&self, f: &PolyOverFq) -> Result<VerificationReport> {
        self.verify_with_counts(f, &self.engine.counts(f))
    }

    pub fn verify_with_counts(&self, f: &PolyOverFq, counts: &[Vec<u64>]) -> Result<VerificationReport> {
        check_coefficients(&self.td, self.field(), &f.coeffs)?;
        let generic = !self.field().is_zero(&self.hasse.evaluate(self.field(), &f.coeffs)?);
        let (l, np, precision) = self.np_with_retry(counts)?;
        let d = int(self.td.d as i64);
        let report = np.compare(&self.target, &Rational::zero(), &d)?;
        let reverse = self.target.compare(&np, &Rational::zero(), &d)?;
        let endpoint_agrees = report.touches_at(&d);
        Ok(VerificationReport {
            coeffs: f.coeffs.iter().map(|c| self.field().code(c)).collect(),
            np,
            target: self.target.clone(),
            dominates: report.dominates,
            endpoint_agrees,
            equality: report.dominates && reverse.dominates,
            generic,
            hypothesis: self.td.satisfies_prime_bound(),
            precision,
            l_checked_polynomial: l.verified_polynomial,
        })
    }

    fn np_with_retry(&self, counts: &[Vec<u64>]) -> Result<(LSeries, NewtonPolygon, u32)> {
        let y = self.target_height();
        let mut guard = self.guard.max(1);
        loop {
            let n = precision_for(self.td.p, y, guard);
            if checked_pow(self.td.p, n).is_none() {
                return Err(Error::PrecisionOverflow { p: self.td.p, n });
            }
            let ring = pi_ring(self.field(), n)?;
            let l = self.engine.l_polynomial_from_counts(&ring, &self.td, counts)?;
            match newton_polygon_pi(&ring, &l.coeffs) {
                Ok(np) => return Ok((l, np, n)),
                Err(Error::PrecisionExhausted { .. }) => guard *= 2,
                Err(e) => return Err(e),
            }
        }
    }
}

/// One-shot form of [`Verifier::verify`].
pub fn verify_main4(td: &TwistData, f: &PolyOverFq, guard: u32, allow_small_p: bool) -> Result<VerificationReport> {
    Verifier::new(td, guard, allow_small_p)?.verify(f)
}

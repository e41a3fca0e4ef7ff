//! The truncated Dwork operator for `f` twisted by `u`.
//!
//! With `E(x)` the Artin–Hasse series and `â_i` Teichmüller lifts,
//! `Π_{i<=d} E(π â_i x^i) = Σ_n γ_n x^n`, each `γ_n` a series in a formal `π`.
//! Block `i` of the matrix has entry `γ_{p l + u_{b-i} - j}` in row `l`,
//! column `j`. For `a = 1` (so `b = 1`) the sum of principal `n × n` minors is
//! the coefficient `C_n` of the characteristic series, and substituting the
//! root `π_D` of `E(π_D) = ζ_p` gives `(-1)^n [s^n] Π_{j>=0} L(q^j s)`.
//!
//! Truncation: a principal minor that uses row `l` has `π`-order at least
//! `(p - 1) l / d`, so rows `l >= M d / (p - 1)` cannot affect anything below
//! `π^M`. [`default_cutoff`] uses that bound.

mod series;

use alloc::vec::Vec;

use crate::arith::ceil_div;
use crate::error::{Error, Result};
use crate::hasse::{check_coefficients, hasse_n, lambda_table, twist_field};
use crate::lfunction::{c_series_coeffs, newton_polygon_from_valuations, pi_ring, precision_for, LEngine, PolyOverFq};
use crate::padic::artin_hasse::artin_hasse_coeffs;
use crate::padic::cyclotomic::{PiElem, PiRing, Valuation};
use crate::padic::field::{FqElem, FqField};
use crate::padic::zq::{ZqElem, ZqRing};
use crate::polygon::NewtonPolygon;
use crate::twist::TwistData;

pub use series::{PiSeries, SeriesRing};

/// Largest number of row subsets [`principal_minor_sum`] will visit.
pub const MINOR_BUDGET: u128 = 2_000_000;

/// Generator of the `γ_n` for one polynomial, at fixed `M` and `p^N`.
#[derive(Debug, Clone)]
pub struct GammaBuilder {
    ring: SeriesRing,
    d: usize,
    lambdas: Vec<u64>,
    /// `powers[i][k] = â_i^k` for `k < M`.
    powers: Vec<Vec<ZqElem>>,
}

impl GammaBuilder {
    pub fn new(field: &FqField, coeffs: &[FqElem], m: usize, prec: u32) -> Result<Self> {
        let zq = ZqRing::new(field.clone(), prec)?;
        let lambdas = artin_hasse_coeffs(m, zq.modulus_pn(), field.p())?;
        let powers = coeffs
            .iter()
            .map(|c| {
                let t = zq.teichmuller(c);
                let mut out = Vec::with_capacity(m);
                let mut cur = zq.one();
                for _ in 0..m {
                    out.push(cur.clone());
                    cur = zq.mul(&cur, &t);
                }
                out
            })
            .collect();
        Ok(Self { ring: SeriesRing::new(zq, m), d: coeffs.len() - 1, lambdas, powers })
    }

    pub fn ring(&self) -> &SeriesRing {
        &self.ring
    }

    pub fn lambdas(&self) -> &[u64] {
        &self.lambdas
    }

    /// `γ_n = Σ π^{Σ n_i} Π λ_{n_i} â_i^{n_i}` over `Σ i n_i = n`; zero for `n < 0`.
    pub fn gamma(&self, n: i64) -> PiSeries {
        let mut out = self.ring.zero();
        if n >= 0 {
            let one = self.ring.zq().one();
            self.collect(self.d, n as usize, 0, &one, &mut out);
        }
        out
    }

    // choose n_i for i = top, ..., 1, then let n_0 run freely
    fn collect(&self, top: usize, rest: usize, count: usize, prod: &ZqElem, out: &mut PiSeries) {
        let zq = self.ring.zq();
        let m = self.ring.truncation();
        if top == 0 {
            for n0 in 0..m.saturating_sub(count) {
                let c = zq.mul(prod, &zq.scale(self.lambdas[n0], &self.powers[0][n0]));
                zq.add_assign(&mut out.coeffs[count + n0], &c);
            }
            return;
        }
        if top == 1 {
            if count + rest < m {
                let c = zq.mul(prod, &zq.scale(self.lambdas[rest], &self.powers[1][rest]));
                self.collect(0, 0, count + rest, &c, out);
            }
            return;
        }
        for ni in 0..=rest / top {
            // the remaining total needs at least ⌈rest / (top - 1)⌉ more parts
            let left = rest - top * ni;
            if count + ni + ceil_div(left as i64, top as i64 - 1) as usize >= m {
                continue;
            }
            let c = zq.mul(prod, &zq.scale(self.lambdas[ni], &self.powers[top][ni]));
            self.collect(top - 1, left, count + ni, &c, out);
        }
    }
}

/// One-shot `γ_n`.
pub fn gamma_coeff(field: &FqField, coeffs: &[FqElem], n: i64, m: usize, prec: u32) -> Result<PiSeries> {
    Ok(GammaBuilder::new(field, coeffs, m, prec)?.gamma(n))
}

/// The blocks `Γ^{(i)}`, each `cutoff × cutoff`. In the full operator block `i`
/// sits in the cyclic superdiagonal position; only the blocks are stored.
#[derive(Debug, Clone)]
pub struct GammaMatrix {
    pub b: usize,
    pub cutoff: usize,
    pub truncation: usize,
    /// `blocks[i][l][j] = γ_{p l + u_{b-i} - j}`.
    pub blocks: Vec<Vec<Vec<PiSeries>>>,
}

impl GammaMatrix {
    pub fn entry(&self, i: usize, l: usize, j: usize) -> &PiSeries {
        &self.blocks[i][l][j]
    }
}

pub fn build_gamma(td: &TwistData, builder: &GammaBuilder, cutoff: usize) -> Result<GammaMatrix> {
    if cutoff == 0 {
        return Err(Error::IndexOutOfRange { n: 0, lo: 1, hi: u64::MAX });
    }
    let max = td.p as usize * (cutoff - 1) + td.digits.iter().copied().max().unwrap_or(0) as usize;
    let gammas: Vec<PiSeries> = (0..=max as i64).map(|n| builder.gamma(n)).collect();
    let zero = builder.ring().zero();
    let blocks = (0..td.b as usize)
        .map(|i| {
            let ui = td.block_digit(i) as i64;
            (0..cutoff)
                .map(|l| {
                    (0..cutoff)
                        .map(|j| {
                            let idx = td.p as i64 * l as i64 + ui - j as i64;
                            if idx < 0 {
                                zero.clone()
                            } else {
                                gammas[idx as usize].clone()
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(GammaMatrix { b: td.b as usize, cutoff, truncation: builder.ring().truncation(), blocks })
}

/// Determinant by cofactor expansion; sizes here stay small.
pub fn determinant(ring: &SeriesRing, m: &[Vec<PiSeries>]) -> PiSeries {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    let cols: Vec<usize> = (0..n).collect();
    det_rec(ring, m, 0, &cols)
}

fn det_rec(ring: &SeriesRing, m: &[Vec<PiSeries>], row: usize, cols: &[usize]) -> PiSeries {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = ring.zero();
    for (k, &c) in cols.iter().enumerate() {
        if ring.is_zero(&m[row][c]) {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(ring, m, row + 1, &rest);
        let term = ring.mul(&m[row][c], &minor);
        if k % 2 == 0 {
            ring.add_assign(&mut acc, &term);
        } else {
            acc = ring.sub(&acc, &term);
        }
    }
    acc
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1u128, |acc, i| acc.saturating_mul(n as u128 - i) / (i + 1))
}

/// `C_n = Σ_{|S| = n} det Γ[S, S]` for `a = 1`.
pub fn principal_minor_sum(td: &TwistData, ring: &SeriesRing, gamma: &GammaMatrix, n: usize) -> Result<PiSeries> {
    if td.a != 1 {
        return Err(Error::RequiresPrimeField { a: td.a });
    }
    let subsets = binomial(gamma.cutoff, n);
    if subsets > MINOR_BUDGET {
        return Err(Error::MinorBudget { subsets, limit: MINOR_BUDGET });
    }
    let block = &gamma.blocks[0];
    let mut acc = ring.zero();
    let mut rows: Vec<usize> = (0..n).collect();
    if n > gamma.cutoff {
        return Ok(acc);
    }
    loop {
        let sub: Vec<Vec<PiSeries>> = rows.iter().map(|&l| rows.iter().map(|&j| block[l][j].clone()).collect()).collect();
        ring.add_assign(&mut acc, &determinant(ring, &sub));
        // next n-subset in lexicographic order
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(acc);
            }
            k -= 1;
            if rows[k] < gamma.cutoff - n + k {
                break;
            }
        }
        rows[k] += 1;
        for t in k + 1..n {
            rows[t] = rows[t - 1] + 1;
        }
    }
}

/// `Π_i det(γ_{p l + u_{b-i} - j})_{l,j<n}` and its comparison with `H_{n,u}(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingDet {
    pub n: u64,
    /// `b P(n)`.
    pub expected_order: u64,
    pub order: Valuation,
    /// The `π^{bP(n)}` coefficient reduced to `F_q`.
    pub value: FqElem,
    pub hasse_value: FqElem,
    /// `Norm_{Z_q/Z_p}` of the `π^{bP(n)}` coefficient, mod `p^N`.
    pub norm: u64,
}

impl LeadingDet {
    /// No term below `π^{bP(n)}` and the leading coefficient is `H_{n,u}(a)`.
    pub fn holds(&self) -> bool {
        self.order.lower_bound() >= self.expected_order && self.value == self.hasse_value
    }
}

pub fn leading_det_product(td: &TwistData, field: &FqField, coeffs: &[FqElem], n: u64, prec: u32) -> Result<LeadingDet> {
    check_coefficients(td, field, coeffs)?;
    if n == 0 || n >= td.d.max(2) {
        return Err(Error::IndexOutOfRange { n, lo: 1, hi: td.d - 1 });
    }
    let expected_order = td.b_arith_value(n) as u64;
    let builder = GammaBuilder::new(field, coeffs, expected_order as usize + 2, prec)?;
    let ring = builder.ring();
    let mut prod = ring.one();
    for i in 0..td.b as usize {
        let ui = td.block_digit(i) as i64;
        let m: Vec<Vec<PiSeries>> = (0..n as i64)
            .map(|l| (0..n as i64).map(|j| builder.gamma(td.p as i64 * l + ui - j)).collect())
            .collect();
        prod = ring.mul(&prod, &determinant(ring, &m));
    }
    let lead = prod.coeff(expected_order as usize);
    let value = ring.zq().reduce(lead);
    let hasse_value = hasse_n(td, n, &lambda_table(td)?)?.evaluate(field, coeffs)?;
    Ok(LeadingDet {
        n,
        expected_order,
        order: ring.valuation(&prod),
        value,
        hasse_value,
        norm: ring.zq().norm(lead),
    })
}

/// Solve `E(x) = ζ_p` for `x ≡ π (mod π^2)` in `Z_p[ζ_p]`.
pub fn dwork_uniformizer(ring: &PiRing) -> Result<PiElem> {
    let cap = ring.cap() as usize;
    let lambdas = artin_hasse_coeffs(cap, ring.zq().modulus_pn(), ring.p())?;
    let zeta = ring.zeta();
    let eval = |x: &PiElem| {
        let mut acc = ring.zero();
        for &l in lambdas.iter().rev() {
            acc = ring.add(&ring.mul(&acc, x), &ring.from_i64(l as i64));
        }
        acc
    };
    let mut x = ring.pi();
    for _ in 0..=cap {
        let next = ring.sub(&x, &ring.sub(&eval(&x), &zeta));
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    Err(Error::PrecisionExhausted { cap: ring.cap() })
}

/// Cutoff and truncation for minors up to size `n_max`.
pub fn default_truncation(td: &TwistData, n_max: u64) -> usize {
    (td.b_arith_value(n_max) as u64 + td.p) as usize
}

pub fn default_cutoff(td: &TwistData, n_max: u64, m: usize) -> usize {
    let certified = ceil_div(m as i64 * td.d as i64, td.p as i64 - 1) as usize + 1;
    certified.max((n_max + td.d) as usize)
}

/// Minor data for `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorReport {
    pub cutoff: usize,
    pub truncation: usize,
    pub precision: u32,
    /// `ord_π C_n` for the formal `π`.
    pub orders: Vec<Valuation>,
    /// `b P(n)`.
    pub bounds: Vec<i64>,
    pub formal: NewtonPolygon,
    /// `ord_π C_n(π_D)` in `Z_p[ζ_p]`.
    pub specialized_orders: Vec<Valuation>,
    pub specialized: NewtonPolygon,
    /// `(-1)^n C_n(π_D)` equals `[s^n] Π_j L(q^j s)`, when the enumeration ran.
    pub matches_c_series: Option<bool>,
    /// Recomputing with cutoff `+d` and truncation `+p` changed nothing up to the order.
    pub stable: bool,
}

impl MinorReport {
    pub fn bounds_hold(&self) -> bool {
        self.orders.iter().zip(&self.bounds).all(|(o, &b)| o.lower_bound() as i64 >= b)
    }
}

fn minors(td: &TwistData, field: &FqField, coeffs: &[FqElem], n_max: u64, m: usize, cutoff: usize, prec: u32) -> Result<(SeriesRing, Vec<PiSeries>)> {
    let builder = GammaBuilder::new(field, coeffs, m, prec)?;
    let gamma = build_gamma(td, &builder, cutoff)?;
    let ring = builder.ring().clone();
    let cs = (0..=n_max as usize).map(|n| principal_minor_sum(td, &ring, &gamma, n)).collect::<Result<_>>()?;
    Ok((ring, cs))
}

/// Hulls of `(n, ord C_n)` for the formal and the specialized uniformizer,
/// plus the stability re-check and (when enumeration is feasible) the
/// comparison against the character-sum route.
pub fn np_from_minors(td: &TwistData, coeffs: &[FqElem], n_max: u64, guard: u32) -> Result<MinorReport> {
    if td.a != 1 {
        return Err(Error::RequiresPrimeField { a: td.a });
    }
    let field = twist_field(td)?;
    check_coefficients(td, &field, coeffs)?;
    let m = default_truncation(td, n_max);
    let cutoff = default_cutoff(td, n_max, m);
    let prec = precision_for(td.p, m as u64, guard);
    let (ring, cs) = minors(td, &field, coeffs, n_max, m, cutoff, prec)?;
    let orders: Vec<Valuation> = cs.iter().map(|c| ring.valuation(c)).collect();
    let bounds: Vec<i64> = (0..=n_max).map(|n| td.b_arith_value(n)).collect();
    let formal = newton_polygon_from_valuations(&orders)?;

    let (_, cs2) = minors(td, &field, coeffs, n_max, m + td.p as usize, cutoff + td.d as usize, prec)?;
    let stable = cs.iter().zip(&cs2).zip(&orders).all(|((x, y), o)| {
        let upto = (o.lower_bound() as usize).min(m - 1);
        (0..=upto).all(|j| x.coeff(j) == y.coeff(j))
    });

    let pring = pi_ring(&field, prec)?;
    let pi_d = dwork_uniformizer(&pring)?;
    let specialized_values: Vec<PiElem> = cs.iter().map(|c| ring.specialize(&pring, c, &pi_d)).collect();
    let specialized_orders: Vec<Valuation> = specialized_values.iter().map(|v| pring.valuation(v).capped(m as u64)).collect();
    let specialized = newton_polygon_from_valuations(&specialized_orders)?;

    let matches_c_series = match LEngine::new(&field, td.d, td.d as u32) {
        Ok(engine) if !td.d.is_multiple_of(td.p) => {
            let f = PolyOverFq::new(&field, coeffs.to_vec())?;
            let l = engine.l_polynomial(&pring, td, &f)?;
            let c = c_series_coeffs(&pring, &l.coeffs, n_max as usize, td.a);
            let ok = specialized_values.iter().zip(&c).enumerate().all(|(n, (v, cn))| {
                let signed = if n % 2 == 0 { v.clone() } else { pring.neg(v) };
                pring.congruent(&signed, cn, m as u64)
            });
            Some(ok)
        }
        Ok(_) | Err(Error::EnumerationGuard { .. }) | Err(Error::PDividesDegree { .. }) => None,
        Err(e) => return Err(e),
    };

    Ok(MinorReport {
        cutoff,
        truncation: m,
        precision: prec,
        orders,
        bounds,
        formal,
        specialized_orders,
        specialized,
        matches_c_series,
        stable,
    })
}

/// The `π^{⌈n/d⌉}` coefficient of `γ_n` predicted by its minimal compositions.
pub fn gamma_leading_prediction(builder: &GammaBuilder, td: &TwistData, coeffs: &[FqElem], n: u64) -> Result<ZqElem> {
    let zq = builder.ring().zq();
    let mut acc = zq.zero();
    let lam = builder.lambdas();
    for comp in crate::hasse::restricted_compositions(n, td.d) {
        let mut c = zq.one();
        for (j, &nj) in comp.iter().enumerate() {
            let idx = nj as usize;
            let l = *lam.get(idx).ok_or(Error::LambdaIndexOutOfRange { index: idx, available: lam.len() })?;
            c = zq.mul(&c, &zq.scale(l, &zq.pow(&zq.teichmuller(&coeffs[j + 1]), nj as u128)));
        }
        zq.add_assign(&mut acc, &c);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use alloc::vec;

    fn field_coeffs(p: u64, codes: &[u64]) -> (FqField, Vec<FqElem>) {
        let f = FqField::new(p, 1, None).unwrap();
        let c = codes.iter().map(|&x| f.from_code(x).unwrap()).collect();
        (f, c)
    }

    #[test]
    fn gamma_zero_and_leading_terms() {
        let (f, c) = field_coeffs(11, &[0, 1, 1]);
        let b = GammaBuilder::new(&f, &c, 12, 3).unwrap();
        assert_eq!(b.gamma(0), b.ring().one());
        assert!(b.ring().is_zero(&b.gamma(-1)));
        let g3 = b.gamma(3);
        assert_eq!(b.ring().valuation(&g3), Valuation::Exact(2));
        assert_eq!(g3.coeff(2), &b.ring().zq().one());
        let td = TwistData::new(11, 1, 2, 3).unwrap();
        for n in 0..30u64 {
            let g = b.gamma(n as i64);
            let k = ceil_div(n as i64, 2) as usize;
            assert!(b.ring().valuation(&g).lower_bound() >= k.min(12) as u64);
            if k < 12 {
                let pred = gamma_leading_prediction(&b, &td, &c, n).unwrap();
                assert_eq!(g.coeff(k), &pred, "n={n}");
            }
        }
    }

    #[test]
    fn small_minors() {
        let td = TwistData::new(11, 1, 2, 3).unwrap();
        let (f, c) = field_coeffs(11, &[2, 1, 1]);
        let b = GammaBuilder::new(&f, &c, 19, 4).unwrap();
        let g = build_gamma(&td, &b, 5).unwrap();
        let ring = b.ring();
        assert_eq!(principal_minor_sum(&td, ring, &g, 0).unwrap(), ring.one());
        let trace = (0..5).fold(ring.zero(), |acc, l| ring.add(&acc, g.entry(0, l, l)));
        assert_eq!(principal_minor_sum(&td, ring, &g, 1).unwrap(), trace);
        assert_eq!(g.entry(0, 0, 0), &b.gamma(3));
        assert!(ring.is_zero(g.entry(0, 0, 4)));
    }

    #[test]
    fn leading_det_examples() {
        let td = TwistData::new(11, 1, 2, 3).unwrap();
        let (f, c) = field_coeffs(11, &[0, 3, 5]);
        let r = leading_det_product(&td, &f, &c, 1, 3).unwrap();
        assert_eq!(r.expected_order, 2);
        assert_eq!(r.order, Valuation::Exact(2));
        assert_eq!(r.value, f.from_prime_field(15));
        assert!(r.holds());
        let td = TwistData::new(7, 1, 2, 0).unwrap();
        let (f, c) = field_coeffs(7, &[1, 2, 3]);
        let r = leading_det_product(&td, &f, &c, 1, 3).unwrap();
        assert_eq!((r.order, r.value.clone()), (Valuation::Exact(0), f.one()));
    }

    #[test]
    fn uniformizer_solves_artin_hasse() {
        let f = FqField::new(5, 1, None).unwrap();
        let ring = pi_ring(&f, 4).unwrap();
        let x = dwork_uniformizer(&ring).unwrap();
        assert_eq!(ring.valuation(&ring.sub(&x, &ring.pi())), Valuation::Exact(2));
    }

    #[test]
    fn route_agreement_generic() {
        let td = TwistData::new(11, 1, 2, 3).unwrap();
        let (_, c) = field_coeffs(11, &[2, 1, 1]);
        let r = np_from_minors(&td, &c, 2, 4).unwrap();
        assert!(r.bounds_hold());
        assert!(r.stable);
        assert_eq!(r.matches_c_series, Some(true));
        assert_eq!(r.orders[1], Valuation::Exact(2));
        assert_eq!(r.formal.slopes(), [int(2), int(6)]);
        assert_eq!(r.specialized, r.formal);
    }

    #[test]
    fn rejects_higher_degree_fields() {
        let td = TwistData::new(3, 2, 2, 5).unwrap();
        let f = twist_field(&td).unwrap();
        let c = vec![f.zero(), f.one(), f.one()];
        assert!(matches!(np_from_minors(&td, &c, 1, 2), Err(Error::RequiresPrimeField { a: 2 })));
        assert!(leading_det_product(&td, &f, &c, 1, 3).is_ok());
    }
}

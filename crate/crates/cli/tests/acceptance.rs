//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Exits nonzero when a criterion fails, except for those listed in
//! `KNOWN_FAILURES`, which are printed as FAIL with the reason and do not
//! change the exit status.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twisted_newton::grid::{check_tuple, tuples, Row};
use twisted_newton::sample::random_coeffs;
use twisted_newton::GridArgs;
use twisted_newton_core::arith::{int, rat, Rational};
use twisted_newton_core::dwork::{leading_det_product, np_from_minors};
use twisted_newton_core::hasse::twist_field;
use twisted_newton_core::lfunction::{
    newton_polygon_pi, pi_ring, precision_for, LEngine, PolyOverFq, Verifier, DEFAULT_GUARD,
};
use twisted_newton_core::polygon::{arithmetic_polygon, hodge_polygon};
use twisted_newton_core::TwistData;

/// Criteria whose statement is false as written; the line still prints FAIL.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    8,
    "the slope identity only holds for 1 <= n <= d; for n in (d, 3d] it has counterexamples such as (p=7, d=2, u=0, n=3)",
)];

struct Line {
    id: u32,
    ok: bool,
    what: &'static str,
    detail: String,
}

fn sweep() -> Vec<TwistData> {
    tuples(&GridArgs::default())
        .into_iter()
        .map(|t| TwistData::new(t.p, t.a, t.d, t.u).expect("sweep tuples are valid"))
        .collect()
}

fn sweep_rows() -> Vec<Row> {
    tuples(&GridArgs::default()).iter().map(|t| check_tuple(t).expect("valid tuple")).collect()
}

fn criterion_1(rows: &[Row]) -> Line {
    let bad: Vec<_> = rows.iter().filter(|r| !r.polygon).map(|r| r.tuple).collect();
    Line {
        id: 1,
        ok: bad.is_empty() && !rows.is_empty(),
        what: "P >= (p-1)H on [0,3d] with contact at d",
        detail: format!("{} tuples, {} violations {:?}", rows.len(), bad.len(), bad.iter().take(3).collect::<Vec<_>>()),
    }
}

/// Straight-from-definition slopes, sharing nothing with the library beyond
/// the parameters.
mod naive {
    fn ceil_div(x: i64, d: i64) -> i64 {
        -((-x).div_euclid(d))
    }

    fn digits(p: u64, a: u32, u: u64) -> Vec<u64> {
        (0..a).map(|j| (u / p.pow(j)) % p).collect()
    }

    fn period(p: u64, a: u32, u: u64) -> u32 {
        let q = p.pow(a);
        (1..=a).find(|&b| (u as u128 * (p.pow(b) as u128 - 1)).is_multiple_of(q as u128 - 1)).unwrap()
    }

    /// δ_∈ for one digit `ui`: some `0 <= l < d {n/d}` has `p l + ui ≡ n (mod d)`.
    fn delta_in(p: u64, d: u64, ui: u64, n: u64) -> i64 {
        if n == 0 {
            return 0;
        }
        let frac_times_d = n - d * (n / d);
        i64::from((0..frac_times_d).any(|l| (p * l + ui) as i64 % d as i64 == (n % d) as i64))
    }

    /// `(b ω(n), b)`.
    pub fn omega(p: u64, a: u32, d: u64, u: u64, n: u64) -> (i64, i64) {
        let b = period(p, a, u);
        let us = digits(p, a, u);
        let total = (0..b as usize)
            .map(|j| ceil_div((p as i64 - 1) * n as i64 + us[j] as i64, d as i64) - delta_in(p, d, us[j], n))
            .sum();
        (total, b as i64)
    }

    /// `P(n)` as an unreduced `(num, den)`.
    pub fn arithmetic(p: u64, a: u32, d: u64, u: u64, n: u64) -> (i64, i64) {
        let b = omega(p, a, d, u, 0).1;
        ((0..n).map(|m| omega(p, a, d, u, m).0).sum(), b)
    }

    /// `(p - 1) H(n)` as `(num, den)`.
    pub fn scaled_hodge(p: u64, a: u32, d: u64, u: u64, n: u64) -> (i64, i64) {
        let b = period(p, a, u) as i64;
        let s: i64 = digits(p, a, u)[..b as usize].iter().map(|&x| x as i64).sum();
        let (p, d, n) = (p as i64, d as i64, n as i64);
        // Σ_{l<n} (s / (b d (p-1)) + l / d) times (p - 1)
        let num = n * s + b * (p - 1) * (n * (n - 1) / 2);
        (num, b * d)
    }
}

fn criterion_2(tds: &[TwistData]) -> Line {
    let mut fails = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            fails.push(name.to_string());
        }
    };
    let lib_omega = |p, d, u, n| TwistData::new(p, 1, d, u).unwrap().omega(n);
    let naive_omega = |p, d, u, n| {
        let (x, b) = naive::omega(p, 1, d, u, n);
        rat(x, b)
    };
    for (n, w) in [(0, 0), (1, 4), (2, 8)] {
        check("omega(13,3,0)", lib_omega(13, 3, 0, n) == int(w) && naive_omega(13, 3, 0, n) == int(w));
    }
    for (n, w) in [(0, 2), (1, 6)] {
        check("omega(11,2,3)", lib_omega(11, 2, 3, n) == int(w) && naive_omega(11, 2, 3, n) == int(w));
    }
    for (p, d, n, value) in [(13u64, 3u64, 3u64, 12i64), (7, 2, 2, 3)] {
        let td = TwistData::new(p, 1, d, 0).unwrap();
        let lib_p = arithmetic_polygon(&td, n).unwrap().eval(&int(n as i64)).unwrap();
        let (x, b) = naive::arithmetic(p, 1, d, 0, n);
        check("P(n)", lib_p == int(value) && rat(x, b) == int(value));
        if p == 13 {
            let lib_h = hodge_polygon(&td, n).scale(&int(12)).unwrap().eval(&int(3)).unwrap();
            let (hn, hd) = naive::scaled_hodge(p, 1, d, 0, n);
            check("(p-1)H(3)", lib_h == int(12) && rat(hn, hd) == int(12));
        }
    }
    // the fast path against the naive one on every sweep tuple
    let mut agree = 0usize;
    for td in tds {
        let same = (0..=3 * td.d).all(|n| {
            let (x, b) = naive::omega(td.p, td.a, td.d, td.u, n);
            td.omega(n) == rat(x, b)
        }) && {
            let (hn, hd) = naive::scaled_hodge(td.p, td.a, td.d, td.u, td.d);
            let h = hodge_polygon(td, td.d).scale(&int(td.p as i64 - 1)).unwrap();
            h.eval(&int(td.d as i64)).unwrap() == rat(hn, hd)
        };
        if same {
            agree += 1;
        } else {
            fails.push(format!("naive mismatch at p={} a={} d={} u={}", td.p, td.a, td.d, td.u));
        }
    }
    Line {
        id: 2,
        ok: fails.is_empty(),
        what: "worked values and naive evaluator agreement",
        detail: format!("naive agrees on {agree}/{} tuples; failures {:?}", tds.len(), fails.iter().take(3).collect::<Vec<_>>()),
    }
}

fn criterion_3(rows: &[Row]) -> Line {
    let bad: Vec<_> = rows.iter().filter(|r| !r.hasse).map(|r| r.tuple).collect();
    Line {
        id: 3,
        ok: bad.is_empty() && !rows.is_empty(),
        what: "every Hasse component nonzero, witness coefficient a unit",
        detail: format!("{} tuples, {} failures {:?}", rows.len(), bad.len(), bad.iter().take(3).collect::<Vec<_>>()),
    }
}

fn criterion_4() -> Line {
    let mut fails = Vec::new();
    let mut cases = 0;
    for p in [5u64, 7, 11, 13] {
        for u in 0..=p - 2 {
            cases += 1;
            let td = TwistData::new(p, 1, 1, u).unwrap();
            let ok = Verifier::new(&td, DEFAULT_GUARD, false)
                .and_then(|v| {
                    let f = PolyOverFq::from_codes(v.field(), &[0, 1])?;
                    v.verify(&f)
                })
                .is_ok_and(|r| r.np.slopes() == [int(u as i64)] && td.omega(0) == int(u as i64) && r.passed());
            if !ok {
                fails.push((p, u));
            }
        }
    }
    Line {
        id: 4,
        ok: fails.is_empty(),
        what: "Gauss sums: single slope u = a omega(0)",
        detail: format!("{cases} cases, failures {fails:?}"),
    }
}

fn all_polys(p: u64, d: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for j in 0..=d {
        let range = if j == d { 1..p } else { 0..p };
        out = out.into_iter().flat_map(|c| range.clone().map(move |x| [c.clone(), vec![x]].concat())).collect();
    }
    out
}

fn criterion_5() -> Line {
    let (p, d) = (11u64, 2u64);
    let field = twist_field(&TwistData::new(p, 1, d, 0).unwrap()).unwrap();
    let engine = LEngine::for_degree(&field, d).unwrap();
    let polys: Vec<(PolyOverFq, Vec<Vec<u64>>)> = all_polys(p, d)
        .into_iter()
        .map(|c| {
            let f = PolyOverFq::from_codes(&field, &c).unwrap();
            let counts = engine.counts(&f);
            (f, counts)
        })
        .collect();
    let mut checked = 0usize;
    let mut generic = 0usize;
    let mut fails = Vec::new();
    for u in 0..=9 {
        let td = TwistData::new(p, 1, d, u).unwrap();
        let v = Verifier::with_engine(&td, engine.clone(), DEFAULT_GUARD, false).unwrap();
        for (f, counts) in &polys {
            match v.verify_with_counts(f, counts) {
                Ok(r) if r.hypothesis && r.dominates && r.endpoint_agrees && r.biconditional() => {
                    checked += 1;
                    generic += usize::from(r.generic);
                }
                other => fails.push(format!("u={u} f={:?}: {:?}", f.coeffs, other.map(|r| (r.dominates, r.equality, r.generic)))),
            }
        }
    }

    // one a = 2 spot check
    let (p2, d2) = (13u64, 2u64);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut us: Vec<u64> = (0..=167).collect();
    us.shuffle(&mut rng);
    let mut spot = 0usize;
    let field2 = twist_field(&TwistData::new(p2, 2, d2, 0).unwrap()).unwrap();
    let engine2 = LEngine::for_degree(&field2, d2).unwrap();
    for &u in &us[..5] {
        let td = TwistData::new(p2, 2, d2, u).unwrap();
        let v = Verifier::with_engine(&td, engine2.clone(), DEFAULT_GUARD, false).unwrap();
        for seed in 0..50u64 {
            let codes = random_coeffs(v.field(), d2, seed);
            let f = PolyOverFq::from_codes(v.field(), &codes).unwrap();
            match v.verify(&f) {
                Ok(r) if r.hypothesis && r.passed() => spot += 1,
                other => fails.push(format!("a=2 u={u} seed={seed}: {:?}", other.map(|r| (r.dominates, r.equality, r.generic)))),
            }
        }
    }
    Line {
        id: 5,
        ok: fails.is_empty() && checked == 12_100 && spot == 250,
        what: "NP(L) >= aP, equality on [0,d] iff H_u(f) != 0",
        detail: format!(
            "p=11: {checked}/12100 ({generic} generic); p=13 a=2 u={:?}: {spot}/250; failures {:?}",
            &us[..5],
            fails.iter().take(3).collect::<Vec<_>>()
        ),
    }
}

fn l_and_np(p: u64, d: u64, codes: &[u64]) -> Option<(Vec<bool>, Vec<Rational>)> {
    let td = TwistData::new(p, 1, d, 0).ok()?;
    let field = twist_field(&td).ok()?;
    let engine = LEngine::for_degree(&field, d).ok()?;
    let f = PolyOverFq::from_codes(&field, codes).ok()?;
    let ring = pi_ring(&field, precision_for(p, p, DEFAULT_GUARD)).ok()?;
    let l = engine.l_polynomial(&ring, &td, &f).ok()?;
    let np = newton_polygon_pi(&ring, &l.coeffs).ok()?;
    let expect_linear = [ring.one(), ring.from_i64(-1)];
    let is_linear = l.coeffs.len() == 2 && l.coeffs.iter().zip(&expect_linear).all(|(x, y)| x == y);
    Some((vec![is_linear, l.verified_polynomial], np.slopes()))
}

fn criterion_6() -> Line {
    let mut fails = Vec::new();
    for p in [7u64, 11, 13] {
        if !l_and_np(p, 1, &[0, 1]).is_some_and(|(flags, _)| flags[0]) {
            fails.push(format!("L != 1 - s at p={p}"));
        }
    }
    for p in [11u64, 13] {
        let want = vec![Rational::zero(), int((p as i64 - 1) / 2)];
        if !l_and_np(p, 2, &[0, 0, 1]).is_some_and(|(_, s)| s == want) {
            fails.push(format!("x^2 slopes at p={p}"));
        }
    }
    Line { id: 6, ok: fails.is_empty(), what: "L(x) = 1 - s; slopes of x^2 are {0, (p-1)/2}", detail: format!("failures {fails:?}") }
}

/// A seeded generic `f` for the twist.
fn generic_f(v: &Verifier, seed: u64) -> PolyOverFq {
    (seed..)
        .map(|s| PolyOverFq::from_codes(v.field(), &random_coeffs(v.field(), v.td.d, s)).unwrap())
        .find(|f| !v.field().is_zero(&v.hasse.evaluate(v.field(), &f.coeffs).unwrap()))
        .expect("generic f exists")
}

fn criterion_7() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut us13: Vec<u64> = (0..=11).collect();
    us13.shuffle(&mut rng);
    let mut cases: Vec<(u64, u64, u64)> = (0..=9).map(|u| (11, 2, u)).collect();
    cases.extend(us13[..4].iter().map(|&u| (13, 3, u)));
    let mut fails = Vec::new();
    for &(p, d, u) in &cases {
        let td = TwistData::new(p, 1, d, u).unwrap();
        let v = Verifier::new(&td, DEFAULT_GUARD, false).unwrap();
        let f = generic_f(&v, 100 + u);
        let two = int(2);
        let np_l = v.verify(&f).map(|r| r.np.restrict(&Rational::zero(), &two).unwrap());
        let minors = np_from_minors(&td, &f.coeffs, 2, DEFAULT_GUARD);
        let leading_ok = (1..d).all(|n| {
            let prec = precision_for(p, td.b_arith_value(n) as u64 + 2, DEFAULT_GUARD);
            leading_det_product(&td, v.field(), &f.coeffs, n, prec).is_ok_and(|x| x.holds())
        });
        let ok = match (&np_l, &minors) {
            (Ok(l), Ok(m)) => {
                m.bounds_hold() && m.stable && m.matches_c_series == Some(true) && &m.formal == l && &m.specialized == l && leading_ok
            }
            _ => false,
        };
        if !ok {
            fails.push((p, d, u));
        }
    }
    Line {
        id: 7,
        ok: fails.is_empty(),
        what: "minor bounds, leading determinants, minors NP = L NP on [0,2], stability",
        detail: format!("{} tuples (p=13 u={:?}), failures {fails:?}", cases.len(), &us13[..4]),
    }
}

fn criterion_8(tds: &[TwistData]) -> Line {
    let (mut delta_bad, mut ceil_bad, mut ceil_bad_small) = (0usize, 0usize, 0usize);
    let mut first = None;
    for td in tds {
        for i in 0..td.b as usize {
            for n in 1..=3 * td.d {
                let (l, r) = td.delta_balance(i, n);
                delta_bad += usize::from(l != r);
                let (l, r) = td.ceiling_balance(i, n);
                if l != r {
                    ceil_bad += 1;
                    ceil_bad_small += usize::from(n <= td.d);
                    first.get_or_insert((td.p, td.a, td.d, td.u, n, l, r));
                }
            }
        }
    }
    Line {
        id: 8,
        ok: delta_bad == 0 && ceil_bad == 0,
        what: "counting identity and slope identity for n <= 3d",
        detail: format!(
            "counting identity: {delta_bad} failures; slope identity: {ceil_bad} failures ({ceil_bad_small} with n <= d), first (p,a,d,u,n,lhs,rhs) = {first:?}"
        ),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let tds = sweep();
    let rows = sweep_rows();
    let lines = vec![
        criterion_1(&rows),
        criterion_2(&tds),
        criterion_3(&rows),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(&tds),
    ];
    let mut unexpected = false;
    for line in &lines {
        let known = KNOWN_FAILURES.iter().find(|(id, _)| *id == line.id);
        let status = if line.ok { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} {} [{}]", line.id, line.what, line.detail);
        match (line.ok, known) {
            (false, Some((_, why))) => println!("  known failure: {why}"),
            (false, None) => unexpected = true,
            (true, _) => {}
        }
    }
    println!("elapsed {:.1}s", start.elapsed().as_secs_f64());
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

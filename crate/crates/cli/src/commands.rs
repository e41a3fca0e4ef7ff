//! One function per subcommand. Each returns the rendered document and
//! whether every check it ran passed.

use std::fs;

use num_traits::Zero;
use serde_json::{json, Map, Value};
use twisted_newton_core::arith::{int, Rational};
use twisted_newton_core::dwork::{leading_det_product, np_from_minors};
use twisted_newton_core::hasse::{
    hasse_component, lambda_table, minimal_monomial_witness, twist_field, HasseProduct, DEFAULT_TERM_BUDGET,
};
use twisted_newton_core::lfunction::{newton_polygon_pi, pi_ring, precision_for, LEngine, PolyOverFq, Verifier};
use twisted_newton_core::padic::FqField;
use twisted_newton_core::polygon::{arithmetic_polygon, hodge_polygon};
use twisted_newton_core::{Error, TwistData};

use crate::args::{Common, Format};
use crate::{json as enc, sample, CliError, Outcome};

fn twist(c: &Common) -> Result<TwistData, CliError> {
    Ok(TwistData::new(c.p, c.a, c.d, c.u)?)
}

fn render(c: &Common, value: &Value, passed: bool) -> Result<Outcome, CliError> {
    let body = match c.format {
        Format::Json => serde_json::to_string_pretty(value).expect("json values serialize") + "\n",
        Format::Csv => enc::to_csv(value),
    };
    if let Some(path) = &c.out {
        fs::write(path, &body)?;
    }
    Ok(Outcome { body, passed })
}

fn rationals(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(enc::rational).collect())
}

/// Resolved `f` and the seed that produced it, if any.
fn choose_f(c: &Common, field: &FqField) -> Result<(PolyOverFq, Option<u64>), CliError> {
    let (codes, seed) = sample::resolve(field, c.d, c.coeffs.as_deref(), c.seed);
    if codes.len() as u64 != c.d + 1 {
        return Err(CliError::Invalid(format!("expected {} coefficients, got {}", c.d + 1, codes.len())));
    }
    Ok((PolyOverFq::from_codes(field, &codes)?, seed))
}

fn f_json(field: &FqField, f: &PolyOverFq, seed: Option<u64>) -> Value {
    json!({
        "coeffs": f.coeffs.iter().map(|x| field.code(x)).collect::<Vec<_>>(),
        "seed": seed,
    })
}

fn require_bound(td: &TwistData, c: &Common) -> Result<(), CliError> {
    if td.satisfies_prime_bound() || c.allow_small_p {
        Ok(())
    } else {
        Err(Error::SmallPrime { p: td.p, bound: td.prime_bound() }.into())
    }
}

pub fn polygon(c: &Common) -> Result<Outcome, CliError> {
    let td = twist(c)?;
    let n_max = c.n_max.unwrap_or(3 * td.d).max(td.d);
    let arith = arithmetic_polygon(&td, n_max)?;
    let hodge = hodge_polygon(&td, n_max).scale(&int(td.p as i64 - 1))?;
    let report = arith.compare(&hodge, &Rational::zero(), &int(n_max as i64))?;
    let contact = report.touches_at(&int(td.d as i64));
    let passed = report.dominates && contact;
    let mut body = Map::new();
    body.insert("n_max".into(), json!(n_max));
    body.insert("arithmetic".into(), enc::polygon(&arith));
    body.insert("omega".into(), rationals(&arith.slopes()));
    body.insert("scaled_hodge".into(), enc::polygon(&hodge));
    body.insert("comparison".into(), enc::dominance(&report));
    body.insert("contact_at_d".into(), json!(contact));
    body.insert("passed".into(), json!(passed));
    render(c, &enc::envelope("polygon", &td, body), passed)
}

pub fn hodge(c: &Common) -> Result<Outcome, CliError> {
    let td = twist(c)?;
    let n_max = c.n_max.unwrap_or(3 * td.d);
    let h = hodge_polygon(&td, n_max);
    let mut body = Map::new();
    body.insert("n_max".into(), json!(n_max));
    body.insert("hodge".into(), enc::polygon(&h));
    body.insert("slopes".into(), rationals(&h.slopes()));
    render(c, &enc::envelope("hodge", &td, body), true)
}

pub fn hasse(c: &Common) -> Result<Outcome, CliError> {
    let td = twist(c)?;
    let lambdas = lambda_table(&td)?;
    let product = HasseProduct::new(&td)?;
    let mut components = Vec::new();
    let mut passed = true;
    for n in 1..td.d {
        for i in 0..td.b as usize {
            let h = hasse_component(&td, n, i, &lambdas)?;
            let witness = match minimal_monomial_witness(&td, n, i, &lambdas) {
                Ok(w) => json!({
                    "tau": w.tau.images,
                    "sign": w.tau.sign,
                    "monomial": w.monomial,
                    "coefficient": w.coefficient,
                    "predicted": w.predicted,
                }),
                Err(Error::TheoremViolation(msg)) => {
                    passed = false;
                    json!({ "error": msg })
                }
                Err(e) => return Err(e.into()),
            };
            passed &= !h.is_zero();
            components.push(json!({ "n": n, "i": i, "terms": h.len(), "poly": h.to_string(), "witness": witness }));
        }
    }
    let mut body = Map::new();
    body.insert("components".into(), Value::Array(components));
    match product.expand(DEFAULT_TERM_BUDGET) {
        Ok(h) => body.insert("hasse".into(), json!(h.to_string())),
        Err(Error::TermBudget { limit }) => body.insert("hasse".into(), json!({ "term_budget_exceeded": limit })),
        Err(e) => return Err(e.into()),
    };
    if c.coeffs.is_some() || c.seed.is_some() {
        let field = twist_field(&td)?;
        let (f, seed) = choose_f(c, &field)?;
        let value = product.evaluate(&field, &f.coeffs)?;
        body.insert("f".into(), f_json(&field, &f, seed));
        body.insert("value".into(), json!(field.code(&value).to_string()));
        body.insert("generic".into(), json!(!field.is_zero(&value)));
    }
    body.insert("passed".into(), json!(passed));
    render(c, &enc::envelope("hasse", &td, body), passed)
}

pub fn lfun(c: &Common) -> Result<Outcome, CliError> {
    let td = twist(c)?;
    let field = twist_field(&td)?;
    let (f, seed) = choose_f(c, &field)?;
    let engine = LEngine::for_degree(&field, td.d)?;
    let counts = engine.counts(&f);
    let target = arithmetic_polygon(&td, td.d)?.scale(&int(td.a as i64))?;
    let top = &target.vertices()[target.vertices().len() - 1].1;
    let y: u64 = top.to_integer().try_into().unwrap_or(u64::MAX);
    let mut guard = c.precision_guard.max(1);
    let (ring, l, np, n) = loop {
        let n = precision_for(td.p, y, guard);
        let ring = pi_ring(&field, n)?;
        let l = engine.l_polynomial_from_counts(&ring, &td, &counts)?;
        match newton_polygon_pi(&ring, &l.coeffs) {
            Ok(np) => break (ring, l, np, n),
            Err(Error::PrecisionExhausted { .. }) if guard < 64 => guard *= 2,
            Err(e) => return Err(e.into()),
        }
    };
    let mut body = Map::new();
    body.insert("f".into(), f_json(&field, &f, seed));
    body.insert("precision".into(), json!(n));
    body.insert("l_coeffs".into(), Value::Array(l.coeffs.iter().map(enc::pi_elem).collect()));
    body.insert(
        "valuations".into(),
        Value::Array(l.coeffs.iter().map(|x| enc::valuation(&ring.valuation(x))).collect()),
    );
    body.insert("l_checked_polynomial".into(), json!(l.verified_polynomial));
    body.insert("np".into(), enc::polygon(&np));
    body.insert("np_slopes".into(), rationals(&np.slopes()));
    body.insert("target".into(), enc::polygon(&target));
    render(c, &enc::envelope("lfun", &td, body), true)
}

pub fn verify(c: &Common) -> Result<Outcome, CliError> {
    let td = twist(c)?;
    let verifier = Verifier::new(&td, c.precision_guard, c.allow_small_p)?;
    let (f, seed) = choose_f(c, verifier.field())?;
    let r = verifier.verify(&f)?;
    let passed = r.passed();
    let mut body = Map::new();
    body.insert("f".into(), f_json(verifier.field(), &f, seed));
    body.insert("np".into(), enc::polygon(&r.np));
    body.insert("np_slopes".into(), rationals(&r.np.slopes()));
    body.insert("target".into(), enc::polygon(&r.target));
    body.insert("dominates".into(), json!(r.dominates));
    body.insert("endpoint_agrees".into(), json!(r.endpoint_agrees));
    body.insert("equality".into(), json!(r.equality));
    body.insert("generic".into(), json!(r.generic));
    body.insert("biconditional".into(), json!(r.biconditional()));
    body.insert("hypothesis".into(), json!(r.hypothesis));
    body.insert("precision".into(), json!(r.precision));
    body.insert("l_checked_polynomial".into(), json!(r.l_checked_polynomial));
    body.insert("passed".into(), json!(passed));
    render(c, &enc::envelope("verify", &td, body), passed)
}

pub fn dwork(c: &Common) -> Result<Outcome, CliError> {
    let td = twist(c)?;
    require_bound(&td, c)?;
    let field = twist_field(&td)?;
    let (f, seed) = choose_f(c, &field)?;
    let enforce = td.satisfies_prime_bound();
    let mut passed = true;
    let mut body = Map::new();
    body.insert("f".into(), f_json(&field, &f, seed));

    let mut leading = Vec::new();
    for n in 1..td.d {
        let prec = precision_for(td.p, td.b_arith_value(n) as u64 + 2, c.precision_guard);
        let ld = leading_det_product(&td, &field, &f.coeffs, n, prec)?;
        passed &= ld.holds();
        leading.push(json!({
            "n": n,
            "expected_order": ld.expected_order,
            "order": enc::valuation(&ld.order),
            "value": field.code(&ld.value).to_string(),
            "hasse_value": field.code(&ld.hasse_value).to_string(),
            "norm": ld.norm.to_string(),
            "holds": ld.holds(),
        }));
    }
    body.insert("leading".into(), Value::Array(leading));

    if td.a == 1 {
        let n_max = c.n_max.unwrap_or(td.d.min(2));
        let r = np_from_minors(&td, &f.coeffs, n_max, c.precision_guard)?;
        passed &= r.bounds_hold() && r.stable && r.matches_c_series != Some(false);
        body.insert(
            "minors".into(),
            json!({
                "n_max": n_max,
                "cutoff": r.cutoff,
                "truncation": r.truncation,
                "precision": r.precision,
                "orders": r.orders.iter().map(enc::valuation).collect::<Vec<_>>(),
                "bounds": r.bounds,
                "bounds_hold": r.bounds_hold(),
                "formal": enc::polygon(&r.formal),
                "specialized_orders": r.specialized_orders.iter().map(enc::valuation).collect::<Vec<_>>(),
                "specialized": enc::polygon(&r.specialized),
                "matches_c_series": r.matches_c_series,
                "stable": r.stable,
            }),
        );
    }
    let passed = passed || !enforce;
    body.insert("hypothesis".into(), json!(enforce));
    body.insert("passed".into(), json!(passed));
    render(c, &enc::envelope("dwork", &td, body), passed)
}

//! Exact JSON encodings and a flat CSV view of any JSON document.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use twisted_newton_core::arith::Rational;
use twisted_newton_core::padic::{PiElem, Valuation};
use twisted_newton_core::polygon::DominanceReport;
use twisted_newton_core::{NewtonPolygon, TwistData};

fn bigint(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn rational(x: &Rational) -> Value {
    json!([bigint(x.numer()), bigint(x.denom())])
}

pub fn polygon(poly: &NewtonPolygon) -> Value {
    let vertices: Vec<Value> = poly
        .vertices()
        .iter()
        .map(|(x, y)| json!([bigint(x.numer()), bigint(x.denom()), bigint(y.numer()), bigint(y.denom())]))
        .collect();
    json!({ "vertices": vertices })
}

pub fn dominance(report: &DominanceReport) -> Value {
    json!({
        "dominates": report.dominates,
        "contacts": report.contacts.iter().map(rational).collect::<Vec<_>>(),
        "violations": report.violations.iter().map(rational).collect::<Vec<_>>(),
    })
}

pub fn params(td: &TwistData) -> Value {
    json!({
        "p": td.p,
        "a": td.a,
        "q": td.q,
        "d": td.d,
        "u": td.u,
        "digits": td.digits,
        "b": td.b,
        "s": td.s,
        "epsilon": td.epsilon(),
        "prime_bound_holds": td.satisfies_prime_bound(),
    })
}

/// π-basis coordinates, each a `Z_q` coefficient vector of decimal strings.
pub fn pi_elem(x: &PiElem) -> Value {
    Value::Array(
        x.0.iter()
            .map(|c| Value::Array(c.0.iter().map(|v| Value::String(v.to_string())).collect()))
            .collect(),
    )
}

pub fn valuation(v: &Valuation) -> Value {
    match v {
        Valuation::Exact(e) => json!(e),
        Valuation::AtLeast(c) => json!({ "at_least": c }),
    }
}

pub fn envelope(command: &str, td: &TwistData, body: Map<String, Value>) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(crate::SCHEMA));
    out.insert("command".into(), json!(command));
    out.insert("params".into(), params(td));
    out.extend(body);
    Value::Object(out)
}

/// `path,value` rows for every leaf of the document, in key order.
pub fn to_csv(value: &Value) -> String {
    let mut rows = vec![String::from("path,value")];
    flatten("", value, &mut rows);
    rows.join("\n") + "\n"
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<String>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, rows);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, rows);
            }
        }
        Value::String(s) => rows.push(format!("{prefix},{}", csv_field(s))),
        other => rows.push(format!("{prefix},{other}")),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use twisted_newton_core::arith::{int, rat};

    #[test]
    fn rationals_and_polygons() {
        assert_eq!(rational(&rat(-6, 4)), json!([-3, 2]));
        let poly = NewtonPolygon::from_slopes(&[int(2), int(6)]).unwrap();
        assert_eq!(polygon(&poly), json!({ "vertices": [[0, 1, 0, 1], [1, 1, 2, 1], [2, 1, 8, 1]] }));
    }

    #[test]
    fn csv_rows_follow_key_order() {
        let v = json!({ "b": [1, "x,y"], "a": { "c": true } });
        assert_eq!(to_csv(&v), "path,value\na.c,true\nb[0],1\nb[1],\"x,y\"\n");
    }
}

use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_twisted-newton")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, body) = run(args);
    (code, serde_json::from_str(&body).unwrap_or(Value::Null))
}

#[test]
fn polygon_contact_and_exit_codes() {
    let (code, v) = json(&["polygon", "--p", "13", "--d", "3", "--u", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "twisted-newton/1");
    assert_eq!(v["contact_at_d"], true);
    assert_eq!(v["omega"].as_array().unwrap()[..3], serde_json::json!([[0, 1], [4, 1], [8, 1]]).as_array().unwrap()[..]);
    let (code, v) = json(&["polygon", "--p", "7", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["arithmetic"]["vertices"][2], serde_json::json!([2, 1, 3, 1]));
    assert_eq!(run(&["polygon", "--p", "7", "--d", "2", "--u", "6"]).0, 2);
    assert_eq!(run(&["polygon", "--p", "8", "--d", "2"]).0, 2);
}

#[test]
fn hasse_text_and_evaluation() {
    let (code, v) = json(&["hasse", "--p", "11", "--d", "2", "--u", "3", "--coeffs", "0,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["hasse"], "y_1*y_2");
    assert_eq!(v["value"], "1");
    let (_, v) = json(&["hasse", "--p", "7", "--d", "1"]);
    assert_eq!(v["hasse"], "1");
}

#[test]
fn verify_generic_and_special() {
    let (code, v) = json(&["verify", "--p", "11", "--d", "2", "--u", "3", "--coeffs", "0,1,1"]);
    assert_eq!((code, &v["equality"], &v["generic"]), (0, &Value::Bool(true), &Value::Bool(true)));
    let (code, v) = json(&["verify", "--p", "11", "--d", "2", "--u", "3", "--coeffs", "0,0,1"]);
    assert_eq!((code, &v["equality"], &v["generic"]), (0, &Value::Bool(false), &Value::Bool(false)));
    assert_eq!(run(&["verify", "--p", "5", "--d", "2", "--coeffs", "0,1,1"]).0, 2);
    assert_eq!(run(&["verify", "--p", "5", "--d", "2", "--coeffs", "0,1,1", "--allow-small-p"]).0, 0);
    assert_eq!(run(&["verify", "--p", "11", "--d", "2", "--coeffs", "0,1,0"]).0, 2);
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["lfun", "--p", "13", "--a", "2", "--d", "2", "--u", "40", "--seed", "9"];
    let (c1, a) = run(&args);
    let (c2, b) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["f"]["seed"], 9);
    assert_eq!(v["f"]["coeffs"].as_array().unwrap().len(), 3);
}

#[test]
fn dwork_orders_and_stability() {
    let (code, v) = json(&["dwork", "--p", "11", "--d", "2", "--u", "3", "--coeffs", "0,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["minors"]["orders"], serde_json::json!([0, 2, 8]));
    assert_eq!(v["minors"]["stable"], true);
    assert_eq!(v["leading"][0]["order"], 2);
}

#[test]
fn csv_output_flattens_paths() {
    let (code, body) = run(&["hodge", "--p", "7", "--d", "2", "--n-max", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(body.starts_with("path,value\n"));
    assert!(body.contains("schema,twisted-newton/1"));
    assert!(body.contains("slopes[1][0],1"));
}

#[test]
fn small_grid_passes_and_empty_grid_is_header_only() {
    let (code, body) = run(&["grid", "--d-max", "3"]);
    assert_eq!(code, 0);
    assert!(body.lines().skip(1).all(|l| l.ends_with(",true")));
    let (code, body) = run(&["grid", "--d-min", "4", "--d-max", "3"]);
    assert_eq!(code, 0);
    assert_eq!(body.lines().count(), 1);
}

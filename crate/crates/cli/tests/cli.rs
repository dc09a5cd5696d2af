use std::path::{Path, PathBuf};

use expmat_cli::{run, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, SCHEMA};
use serde_json::{json, Value};
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path
}

fn invoke(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("expmat").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn invoke_json(args: &[&str]) -> (i32, Value) {
    let (code, text) = invoke(args);
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"));
    (code, v)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn j3_over_gf3() -> Value {
    json!({"field": {"char": 3}, "entries": [["1", "T", "2T^2 + T^3"], [0, 1, "T"], [0, 0, 1]]})
}

#[test]
fn verify_upper_shear_over_rationals() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.json", &json!([["1", "T"], ["0", "1"]]));
    let (code, report) = invoke_json(&["verify", p(&b)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["valid"], true);
    assert_eq!(report["schema"], SCHEMA);
    assert_eq!(report["routes_agree"], true);
}

#[test]
fn verify_reports_failing_entry() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.json", &json!([["1", "T^2"], ["0", "1"]]));
    let (code, report) = invoke_json(&["verify", p(&b)]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(report["valid"], false);
    assert_eq!(report["failure"]["entry"], json!([1, 2]));
    assert_eq!(report["routes_agree"], true);
    // Over GF(2) the same matrix is exponential.
    let (code, _) = invoke_json(&["--field", "2", "verify", p(&b)]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn classify_jordan_family_over_gf3() {
    let dir = TempDir::new().unwrap();
    let j = write(&dir, "j.json", &j3_over_gf3());
    let (code, report) = invoke_json(&["classify", p(&j)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["class"]["kind"], "line");
    assert_eq!(report["class"]["display"], "Line(T)");
    assert_eq!(report["verified"], true);

    // The report can be fed straight back to `witness`.
    let stored = write(&dir, "report.json", &report);
    let (code, check) = invoke_json(&["witness", p(&stored)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(check["valid"], true);
    assert_eq!(check["steps"], report["witness"]["steps"].as_array().unwrap().len());
}

#[test]
fn skipping_witness_verification_is_reported() {
    let dir = TempDir::new().unwrap();
    let j = write(&dir, "j.json", &j3_over_gf3());
    let (code, report) = invoke_json(&["--no-witness-verify", "classify", p(&j)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["verified"], false);
}

#[test]
fn equiv_across_families_is_negative() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &json!([[1, 0, "T"], [0, 1, 0], [0, 0, 1]]));
    let b = write(&dir, "b.json", &json!([[1, "T", "T^2"], [0, 1, 0], [0, 0, 1]]));
    let (code, report) = invoke_json(&["--field", "2", "equiv", p(&a), p(&b)]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(report["equivalent"], false);
    assert_eq!(report["witness"], Value::Null);
}

#[test]
fn equiv_within_a_class_emits_a_joined_witness() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &json!([[1, "T"], [0, 1]]));
    let b = write(&dir, "b.json", &json!([[1, 0], ["2T", 1]]));
    let (code, report) = invoke_json(&["--field", "3", "equiv", p(&a), p(&b)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["equivalent"], true);
    let w = write(&dir, "w.json", &report["witness"]);
    assert_eq!(invoke_json(&["witness", p(&w)]).0, EXIT_OK);
}

#[test]
fn tampered_witness_is_rejected() {
    let dir = TempDir::new().unwrap();
    let j = write(&dir, "j.json", &j3_over_gf3());
    let (_, mut report) = invoke_json(&["classify", p(&j)]);
    let steps = report["witness"]["steps"].as_array_mut().unwrap();
    steps.remove(0);
    let w = write(&dir, "w.json", &report);
    let (code, check) = invoke_json(&["witness", p(&w)]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(check["valid"], false);
    assert_eq!(check["error"]["kind"], "WitnessRejected");
}

#[test]
fn exp_and_log_round_trip() {
    let dir = TempDir::new().unwrap();
    let n = json!([[0, 1, "1/2"], [0, 0, 3], [0, 0, 0]]);
    let input = write(&dir, "n.json", &n);
    let (code, e) = invoke_json(&["exp", p(&input)]);
    assert_eq!(code, EXIT_OK);
    let exp_file = write(&dir, "e.json", &e);
    assert_eq!(invoke_json(&["verify", p(&exp_file)]).0, EXIT_OK);
    let (code, l) = invoke_json(&["log", p(&exp_file)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(l["matrix"], json!([["0", "1", "1/2"], ["0", "0", "3"], ["0", "0", "0"]]));
}

#[test]
fn exp_rejects_positive_characteristic() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "n.json", &json!([[0, 1], [0, 0]]));
    let (code, report) = invoke_json(&["--field", "3", "exp", p(&input)]);
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(report["error"]["kind"], "WrongCharacteristic");
}

#[test]
fn action_of_upper_shear() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.json", &json!([[1, 0, "T"], [0, 1, 0], [0, 0, 1]]));
    let (code, report) = invoke_json(&["action", p(&b)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(report["display"], "(x2*T + x0 : x1 : x2)");
    assert_eq!(report["action"]["vars"], json!(["x0", "x1", "x2", "T"]));
}

#[test]
fn enumerate_streams_json_lines() {
    let (code, text) = invoke(&["--field", "2", "enumerate", "--n", "2"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[3]["index"], 3);
    let (_, text) = invoke(&["--field", "2", "enumerate", "--n", "3", "--family", "A12"]);
    assert_eq!(text.lines().count(), 16);
    let (_, text) = invoke(&["--field", "3", "enumerate", "--n", "2"]);
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn enumerate_refuses_oversized_requests() {
    let (code, text) = invoke(&["--field", "3^2", "--degree-bound", "3", "enumerate", "--n", "3"]);
    assert_eq!(code, EXIT_USAGE);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["error"]["kind"], "TooLarge");
}

#[test]
fn degree_bound_limits_inputs() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.json", &json!([[1, "T^4"], [0, 1]]));
    assert_eq!(invoke_json(&["--field", "2", "--degree-bound", "2", "verify", p(&b)]).0, EXIT_OK);
    let (code, report) = invoke_json(&["--field", "2", "--degree-bound", "1", "verify", p(&b)]);
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(report["error"]["kind"], "Parse");
}

#[test]
fn malformed_input_exits_with_usage_code() {
    let dir = TempDir::new().unwrap();
    let garbage = dir.path().join("bad.json");
    std::fs::write(&garbage, "{not json").unwrap();
    let (code, report) = invoke_json(&["verify", p(&garbage)]);
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(report["error"]["kind"], "Parse");

    let missing = dir.path().join("missing.json");
    assert_eq!(invoke_json(&["classify", p(&missing)]).0, EXIT_USAGE);

    let ragged = write(&dir, "ragged.json", &json!([["1", "T"], ["1"]]));
    assert_eq!(invoke_json(&["verify", p(&ragged)]).0, EXIT_USAGE);

    let (code, report) = invoke_json(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(report["error"]["kind"], "Usage");

    let (code, report) = invoke_json(&["--field", "6", "enumerate"]);
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(report["error"]["kind"], "InvalidField");
}

#[test]
fn classify_rejects_non_exponential_input_as_negative() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.json", &json!([["1", "T^2"], ["0", "1"]]));
    let (code, report) = invoke_json(&["classify", p(&b)]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(report["valid"], false);
    assert_eq!(report["verification"]["checks"]["product"], false);
}

#[test]
fn output_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let j = write(&dir, "j.json", &j3_over_gf3());
    let first = invoke(&["classify", p(&j)]);
    for _ in 0..3 {
        assert_eq!(invoke(&["classify", p(&j)]), first);
    }
}

#[test]
fn help_and_version() {
    let (code, text) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("classify"));
    let (code, _) = invoke(&["--version"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn binary_matches_library() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.json", &json!([["1", "T"], ["0", "1"]]));
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_expmat")).args(["verify", p(&b)]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), invoke(&["verify", p(&b)]).1);
}

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bsat-arr"))
}

fn write_input(name: &str, json: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, json).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn three_lines() -> PathBuf {
    write_input("three_lines.json", r#"{"n": 2, "hyperplanes": [[1, 0], [0, 1], [1, 1]]}"#)
}

fn statuses(v: &Value) -> Vec<String> {
    v["checks"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap().to_string()).collect()
}

#[test]
fn generic_bfunction() {
    let out = run(&["bfunction", "--generic", "--n", "2", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let exact = &v["results"]["candidates"][0];
    assert_eq!(exact["label"], "conjectured exact");
    assert_eq!(exact["b"]["shifts"], serde_json::json!({"1": 2, "2/3": 1, "4/3": 1}));
    assert_eq!(exact["factored"], "(s+1)^1*(s+2/3)(s+3/3)(s+4/3)");
    assert_eq!(v["results"]["candidates"][1]["b"]["shifts"], serde_json::json!({"1": 1, "2/3": 1, "4/3": 1}));
    assert_eq!(v["results"]["u_q_bound"], 2);
}

#[test]
fn generic_bfunction_precondition() {
    let out = run(&["bfunction", "--generic", "--n", "1", "--k", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n ≥ 2"));
}

#[test]
fn isolated_bfunction() {
    let path = three_lines();
    let out = run(&["bfunction", "--isolated", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["b"]["shifts"], serde_json::json!({"1": 2, "2/3": 1, "4/3": 1}));
    assert_eq!(statuses(&v), ["pass"]);
}

#[test]
fn isolated_rejects_cones() {
    let path = write_input("cone.json", r#"{"n": 3, "hyperplanes": [[1,0,0],[0,1,0],[0,0,1],[1,1,1]]}"#);
    let out = run(&["bfunction", "--isolated", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn milnor_profiles() {
    let path = write_input("four_planes.json", r#"{"n": 3, "hyperplanes": [[1,0,0],[0,1,0],[0,0,1],[1,1,1]]}"#);
    let v = json(&run(&["milnor", "--input", path.to_str().unwrap()]));
    assert_eq!(v["results"]["u"], serde_json::json!([1, 3, 1, 1, 0, 0]));
    assert_eq!(v["results"]["total"], 6);
    assert!(v["results"]["comparison"].as_array().unwrap().iter().all(|c| c["status"] == "match"));

    let path = three_lines();
    let v = json(&run(&["milnor", "--input", path.to_str().unwrap()]));
    assert_eq!(v["results"]["u"], serde_json::json!([1, 2, 1, 0, 0]));
}

#[test]
fn milnor_rejects_non_generic() {
    let path = write_input("flat.json", r#"{"n": 3, "hyperplanes": [[1,0,0],[0,1,0],[1,1,0]]}"#);
    let out = run(&["milnor", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[1, 2, 3]"));
}

#[test]
fn lengths() {
    for (name, src, want) in [
        ("x.json", r#"{"n": 1, "hyperplanes": [[1]]}"#, 2),
        ("xy.json", r#"{"n": 2, "hyperplanes": [[1,0],[0,1]]}"#, 4),
        ("xyz.json", r#"{"n": 2, "hyperplanes": [[1,0],[0,1],[1,1]]}"#, 7),
    ] {
        let path = write_input(name, src);
        let v = json(&run(&["length", "--input", path.to_str().unwrap()]));
        assert_eq!(v["results"]["length"], want, "{name}");
    }
}

#[test]
fn rewrite_product() {
    let path = three_lines();
    let out = run(&["rewrite", "--input", path.to_str().unwrap(), "--product", "1,2", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["coefficients"][0]["monomial"], "H2*H3");
    assert_eq!(v["results"]["coefficients"][0]["coefficient"], "-1");
    assert!(statuses(&v).iter().all(|s| s == "pass"));

    let out = run(&["rewrite", "--input", path.to_str().unwrap(), "--product", "1,2", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_grid() {
    let out = bin().args(["verify", "--grid", "n=2..2,k=n..4"]).env("BSAT_ARR_THREADS", "2").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let s = statuses(&v);
    assert!(!s.iter().any(|x| x == "fail"));
    assert!(s.iter().any(|x| x == "unverified"));
    assert!(s.iter().filter(|x| *x == "pass").count() > 20);
}

#[test]
fn verify_input_file() {
    let path = write_input("verify_flat.json", r#"{"n": 3, "hyperplanes": [[1,0,0],[0,1,0],[0,0,1],[1,1,0]]}"#);
    let out = run(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["name"].as_str().unwrap().starts_with("pij-annihilation")));
}

#[test]
fn deterministic_output() {
    let path = three_lines();
    let a = run(&["milnor", "--input", path.to_str().unwrap()]);
    let b = run(&["milnor", "--input", path.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!has_float(&json(&a)), "no floating point in reports");
}

fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_f64(),
        Value::Array(xs) => xs.iter().any(has_float),
        Value::Object(m) => m.values().any(has_float),
        _ => false,
    }
}

#[test]
fn table_format() {
    let out = run(&["bfunction", "--generic", "--n", "3", "--k", "4", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("checks"));
    assert!(text.contains("UNVERIFIED exponent-r"));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["bfunction", "--generic", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--grid", "k=1"]).status.code(), Some(2));
    let path = write_input("bad.json", r#"{"n": 2, "hyperplanes": [[1.5, 0]]}"#);
    assert_eq!(run(&["length", "--input", path.to_str().unwrap()]).status.code(), Some(2));
}

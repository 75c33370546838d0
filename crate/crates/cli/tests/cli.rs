use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn ozonelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ozonelab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = ozonelab(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn dims(v: &Value) -> Vec<u64> {
    v["payload"]["dims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect()
}

#[test]
fn basis_dimensions() {
    let s = spec("sklyanin_111m1.alg");
    assert_eq!(dims(&json(&["basis", s.to_str().unwrap(), "--max-degree", "6"])), vec![1, 3, 6, 10, 15, 21, 28]);
    let s = spec("skew_q3.alg");
    assert_eq!(dims(&json(&["basis", s.to_str().unwrap(), "--max-degree", "3"])), vec![1, 2, 3, 4]);
}

#[test]
fn malformed_spec_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.alg");
    std::fs::write(&path, "[generators]\nx = 1\n[[relations]]\nexpr = \"x*(\"\n").unwrap();
    let out = ozonelab(&["basis", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn ozone_of_heisenberg() {
    let s = spec("heisenberg_m1.alg");
    let v = json(&["ozone", s.to_str().unwrap(), "--max-degree", "4", "--conductor", "2"]);
    assert_eq!(v["payload"]["exact"], Value::Bool(true));
    assert_eq!(v["payload"]["invariant_factors"], serde_json::json!([2]));
}

#[test]
fn oversized_search_exits_4() {
    let s = spec("heisenberg_m1.alg");
    let out = ozonelab(&["ozone", s.to_str().unwrap(), "--conductor", "300"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn rank_from_series() {
    let v = json(&["rank", "--ha", "1/(1-t)^3", "--hz", "(1-t^6)/((1-t^2)^3*(1-t^3))"]);
    assert_eq!(v["payload"]["rank"], 4);
}

#[test]
fn corpus_exit_status() {
    assert_eq!(ozonelab(&["corpus", "--case", "skew_q3"]).status.code(), Some(0));
    assert_eq!(ozonelab(&["corpus", "--case", "ore_skewm1_sigma"]).status.code(), Some(1));
    assert_eq!(ozonelab(&["corpus", "--case", "no_such_case"]).status.code(), Some(2));
}

#[test]
fn json_is_deterministic() {
    let s = spec("s3_m1.alg");
    let args = ["--format", "json", "ozone", s.to_str().unwrap(), "--max-degree", "3"];
    let a = ozonelab(&args);
    let b = ozonelab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_report_round_trip() {
    let s = spec("heisenberg_m1.alg");
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = ozonelab(&["--format", "json", "ozone", s.to_str().unwrap(), "--conductor", "2"]);
    std::fs::write(&report, &out.stdout).unwrap();
    let ok = ozonelab(&["check-report", report.to_str().unwrap(), s.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    // a different spec changes the digest
    let other = spec("skew_q3.alg");
    let bad = ozonelab(&["check-report", report.to_str().unwrap(), other.to_str().unwrap()]);
    assert_ne!(bad.status.code(), Some(0));
}

#[test]
fn emitted_specs_parse() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["skew_q3", "heisenberg_m1", "downup_0_1", "tensor_skewq3_t"] {
        let out = ozonelab(&["families", "emit", id]);
        assert!(out.status.success(), "{id}");
        let path = dir.path().join(format!("{id}.alg"));
        std::fs::write(&path, &out.stdout).unwrap();
        let basis = ozonelab(&["basis", path.to_str().unwrap(), "--max-degree", "2"]);
        assert!(basis.status.success(), "{id}: {}", String::from_utf8_lossy(&basis.stderr));
    }
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn h1loc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_h1loc")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_five_passes() {
    let out = h1loc(&["verify", "--primes", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 5);
    assert!(reports.iter().all(|r| r["passed"] == true));
}

#[test]
fn h1loc_of_cyclic_split_file_is_nontrivial() {
    let input = data("cyclic_split_p5.json");
    let out = h1loc(&["h1loc", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["group_label"], "cyclic-split-p5");
    assert_eq!(v["module"], "V");
    assert!(v["order"].as_u64().unwrap() > 1);
    assert!(v["witness"].is_array());
}

// H^1 of the unipotent subgroup is V/<e1>, on which diag(-1,1) acts by -1.
#[test]
fn h1_of_borel_mod_five_vanishes() {
    let input = data("borel_mod5.json");
    let out = h1loc(&["h1", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["order"], 1);
}

#[test]
fn scan_seven_has_no_case2() {
    let out = h1loc(&["scan", "--p", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v.as_array().unwrap().iter().all(|e| e["case"] != "Case2"));
}

#[test]
fn power_identity_passes() {
    let out = h1loc(&["power-identity", "--p", "7", "--m", "3", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["trials"], 200);
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.json");
    let a = h1loc(&["scan", "--p", "5"]);
    let b = h1loc(&["scan", "--p", "5", "--output", path.to_str().unwrap()]);
    assert_eq!(b.status.code(), Some(0));
    assert!(b.stdout.is_empty());
    assert_eq!(a.stdout, std::fs::read(&path).unwrap());
}

#[test]
fn malformed_json_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"p\": 5,\n  \"n\": 2,\n  \"generators\": [[[1, 0], [0, 1]]\n}\n").unwrap();
    let out = h1loc(&["h1", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 5"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(h1loc(&["verify", "--primes", "5,9"]).status.code(), Some(2));
    assert_eq!(h1loc(&["scan", "--p", "6"]).status.code(), Some(2));
    assert_eq!(h1loc(&["scan", "--p", "17"]).status.code(), Some(3));
    let input = data("cyclic_split_p5.json");
    assert_eq!(
        h1loc(&["h1", "--input", input.to_str().unwrap(), "--cap", "10"]).status.code(),
        Some(3)
    );
    assert_eq!(h1loc(&["h1", "--input", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(h1loc(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(h1loc(&["scan"]).status.code(), Some(1));
    assert_eq!(h1loc(&["--help"]).status.code(), Some(0));
}

//! Exit-code and output contract of the `qsc` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn qsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsc")).args(args).env("QSC_THREADS", "2").output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    qsc(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = qsc(args);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let p = std::env::temp_dir().join(format!("qsc-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn check_qq_random_passes() {
    assert_eq!(code(&["check-qq", "--random", "20", "--degree", "3", "--rng-seed", "7"]), 0);
}

#[test]
fn check_qq_perturbed_and_malformed() {
    let v = json(&["gen-qsystem", "--random", "1", "--degree", "2"]);
    let mut q = v.clone();
    q["Q"]["1|2"]["terms"][0]["coeffs"][0] = serde_json::json!(["12345", "0"]);
    let bad = temp_file("bad.json", &q.to_string());
    assert_eq!(code(&["check-qq", "--seed", bad.to_str().unwrap()]), 1);
    let good = temp_file("good.json", &v.to_string());
    assert_eq!(code(&["check-qq", "--seed", good.to_str().unwrap()]), 0);
    let broken = temp_file("broken.json", "{\"Q\": [");
    assert_eq!(code(&["check-qq", "--seed", broken.to_str().unwrap()]), 2);
}

#[test]
fn solve_liebwu_examples() {
    let v = json(&["solve-liebwu", "--L", "2", "--u", "1", "--N", "1", "--M", "0", "--I", "0", "--compare-ed"]);
    assert!((v["E"][0].as_f64().unwrap() + 2.0).abs() < 1e-12);
    assert!(v["ed"]["entries"][0]["gap"].as_f64().unwrap() < 1e-8);
    assert_eq!(code(&["solve-liebwu", "--L", "2", "--u", "1", "--N", "1", "--M", "0", "--I", "0", "--compare-ed"]), 0);

    let v = json(&["solve-liebwu", "--L", "2", "--u", "1", "--N", "0", "--M", "0"]);
    assert_eq!(v["E"][0].as_f64().unwrap(), 2.0);

    assert_eq!(code(&["solve-liebwu", "--L", "3", "--u", "1", "--N", "2", "--I", "1,1"]), 2);
    let inline = json(&["solve-liebwu", "--input", r#"{"L":2,"u":1,"N":1,"M":0,"I":[0],"J":[]}"#]);
    assert!((inline["E"][0].as_f64().unwrap() + 2.0).abs() < 1e-12);
}

#[test]
fn suite_flags() {
    assert_eq!(code(&["suite", "--only", "hirota"]), 0);
    let v = json(&["suite", "--only", "hirota"]);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 1);
    let out = qsc(&["suite", "--tol", "0", "--only", "truncation,baxter,ed"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("first failing criterion"));
    assert_eq!(code(&["suite", "--only", "nonsense"]), 2);
}

#[test]
fn unknown_flags_are_errors_and_help_lists_flags() {
    assert_eq!(code(&["ed", "--L", "2", "--u", "1", "--bogus"]), 2);
    let help = String::from_utf8(qsc(&["solve-liebwu", "--help"]).stdout).unwrap();
    for flag in ["--L", "--u", "--N", "--M", "--I", "--J", "--compare-ed", "--input", "--format", "--rng-seed", "--tol"] {
        assert!(help.contains(flag), "missing {flag}");
    }
}

#[test]
fn json_output_is_byte_identical() {
    let args = ["check-f", "--points", "20", "--rng-seed", "3"];
    assert_eq!(qsc(&args).stdout, qsc(&args).stdout);
    let args = ["compare", "--L", "3", "--u", "0.5"];
    assert_eq!(qsc(&args).stdout, qsc(&args).stdout);
}

#[test]
fn csv_output_is_rfc4180() {
    let out = String::from_utf8(qsc(&["compare", "--L", "2", "--u", "1", "--format", "csv"]).stdout).unwrap();
    let mut r = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), ["N", "M", "I", "J", "E", "gap"]);
    // Quantum-number lists contain commas and must come back as single fields.
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert!(!rows.is_empty() && rows.iter().all(|row| row.len() == 6));
}

#[test]
fn numeric_subcommands() {
    assert_eq!(code(&["ed", "--L", "2", "--u", "1", "--sector", "1,0"]), 0);
    assert_eq!(code(&["character", "--sx", "3/2,1/3", "--sy", "-1/5,2"]), 0);
    assert_eq!(code(&["character", "--sx", "0,1", "--sy", "1,2"]), 2);
    assert_eq!(code(&["check-hirota", "--random", "2", "--window", "3,3"]), 0);
    assert_eq!(code(&["pmu-check", "--points", "10"]), 0);
    assert_eq!(code(&["ads3-residuals", "--input", r#"{"h":0.5,"L":4,"seed":{"u":[[0.6,0]],"ub":[[-0.6,0]]}}"#]), 0);
    assert_eq!(code(&["ads3-crossing", "--model", "toy"]), 0);
    assert_eq!(code(&["ads3-crossing", "--model", "constant"]), 1);
    let nested = r#"{"h":0.8,"u0":[[0.2,0],[-0.5,0]],"seed":{"x1e":[[-24,0.3]],"u11":[[-5.5,0.1]],"x112":[[-0.3,0.01]]}}"#;
    let v = json(&["solve-nested", "--input", nested]);
    assert!(v["residual"].as_f64().unwrap() < 1e-12);
}

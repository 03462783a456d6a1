use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taylor-mean"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn close(v: &Value, x: f64) -> bool {
    (v.as_f64().unwrap() - x).abs() < 1e-9
}

#[test]
fn mean_reciprocal() {
    let v = json(&[
        "mean", "--f", "power:-1", "--r", "3", "--a", "1", "--b", "2", "--format", "json",
    ]);
    assert!(close(&v["x0"], 4.0 / 3.0));
    assert!(close(&v["pairs"][0][0], 1.2) && close(&v["pairs"][0][1], 0.4));
    assert_eq!(v["inside"], serde_json::json!([true]));
    assert!(v["residual"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn mean_quartic_and_counterexample() {
    let v = json(&[
        "mean", "--f", "power:4", "--r", "3", "--a", "1", "--b", "3", "--format", "json",
    ]);
    assert!(close(&v["pairs"][0][0], 2.0));
    let v = json(&[
        "mean",
        "--f",
        "power:3/2",
        "--r",
        "3",
        "--a",
        "1",
        "--b",
        "36",
        "--format",
        "json",
    ]);
    assert_eq!(v["inside"], serde_json::json!([false]));
    assert!(close(&v["x0"], 6.0));
    let plain = run(&["mean", "--f", "power:1.5", "--r", "3", "--a", "1", "--b", "36"]);
    assert!(String::from_utf8(plain.stdout).unwrap().contains("inside=false"));
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "--suite", "factor-signs", "--n", "4..30"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", "--suite", "lemma6", "--n", "13..40"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with("PASS") && l.ends_with("count 1"))
            .count(),
        28
    );
    let v = json(&[
        "verify", "--suite", "theorem1", "--p", "-12..20", "--b", "2", "--format", "json",
    ]);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["passed"], 29);
}

#[test]
fn verify_all_passes() {
    let out = run(&["verify", "--suite", "all"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.lines().last().unwrap().ends_with("0 failed"));
}

#[test]
fn sweep_reciprocal_verdicts() {
    let v = json(&[
        "sweep", "--f", "power:-1", "--r", "4,5,7", "--a", "1", "--b", "2,4", "--format", "json",
    ]);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 6);
    for key in ["spec", "r", "a", "b", "x0", "pairs", "inside", "cj1", "cj2", "residual"] {
        assert!(cases.iter().all(|c| c.get(key).is_some()), "missing {key}");
    }
    let r5 = cases.iter().find(|c| c["r"] == 5 && c["b"] == 2.0).unwrap();
    assert_eq!(r5["cj1"], true);
    assert_eq!(r5["cj2"], false);
    assert_eq!(r5["closed_form"]["matches"], true);
    let r4 = cases.iter().find(|c| c["r"] == 4 && c["b"] == 4.0).unwrap();
    assert_eq!(r4["cj1"], true);
    assert_eq!(r4["cj2"], false);
    assert_eq!(v["summary"]["closed_form_mismatches"], 0);
}

#[test]
fn sweep_demo_and_grid() {
    let v = json(&["sweep", "--demo", "nonreal-nodes", "--format", "json"]);
    for (root, k) in v["roots"].as_array().unwrap().iter().zip([2.0, 3.0, 4.0]) {
        assert!(close(&root[0], k) && close(&root[1], k));
    }
    let v = json(&[
        "sweep",
        "--f",
        "power:5",
        "--r",
        "3",
        "--b",
        "1.5..10:0.5",
        "--format",
        "json",
    ]);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 18);
    assert!(cases.iter().all(|c| c["cj2"] == true));
}

#[test]
fn csv_has_one_row_per_pair() {
    let out = run(&["sweep", "--f", "power:-1", "--r", "5,6", "--b", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.records().count(), 2 + 3);
}

#[test]
fn output_is_deterministic_across_jobs() {
    let dir = std::env::temp_dir().join(format!("taylor-mean-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let mut files = vec![];
    for jobs in ["1", "4", "4"] {
        let path = dir.join(format!("out-{jobs}-{}.json", files.len()));
        let out = run(&[
            "sweep",
            "--f",
            "power:-1,exp,log,power:2.5",
            "--r",
            "2..7",
            "--b",
            "1.5,2,4",
            "--jobs",
            jobs,
            "--format",
            "json",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        files.push(fs::read(&path).unwrap());
    }
    assert!(files.windows(2).all(|w| w[0] == w[1]));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_input_is_a_usage_error() {
    for args in [
        &["mean", "--f", "power:2", "--r", "3", "--a", "1", "--b", "2"][..],
        &["mean", "--f", "tan", "--r", "3", "--a", "1", "--b", "2"],
        &["mean", "--f", "exp", "--r", "0", "--a", "1", "--b", "2"],
        &["mean", "--f", "exp", "--r", "3", "--a", "x", "--b", "2"],
        &["mean", "--f", "log", "--r", "3", "--a", "-2", "--b", "2"],
        &["verify", "--suite", "lemma5", "--n", "9..4"],
        &["sweep", "--f", "exp", "--b", "1..0.5"],
        &["sweep", "--f", "exp", "--jobs", "0"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"), "{args:?}");
    }
}

#[test]
fn strict_sweep_fails_on_errors() {
    let out = run(&["sweep", "--f", "power:2,power:-1", "--r", "3", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["sweep", "--f", "power:2,power:-1", "--r", "3", "--b", "2", "--strict"]);
    assert_eq!(out.status.code(), Some(1));
}

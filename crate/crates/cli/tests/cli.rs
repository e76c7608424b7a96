use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasifourier"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Data rows after the metadata and header lines.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn field(row: &[String], i: usize) -> f64 {
    row[i].parse().unwrap()
}

#[test]
fn points_between_zero_and_five() {
    let out = stdout(&["points", "--lo", "0", "--hi", "5"]);
    let points = rows(&out);
    assert_eq!(points.len(), 4);
    assert_eq!(points[0][4], "long");
    assert_eq!(points[1][4], "short");
    assert_eq!(rows(&stdout(&["points", "--lo", "0", "--hi", "0"])).len(), 1);
}

#[test]
fn approximate_window_reproduces_the_default() {
    let exact = stdout(&["points", "--lo", "0", "--hi", "100"]);
    let approx = stdout(&[
        "points",
        "--lo",
        "0",
        "--hi",
        "100",
        "--window=[-1:0.6180339887498949)",
    ]);
    assert_eq!(rows(&exact), rows(&approx));
}

#[test]
fn coefficient_table_constant_term() {
    let rows = rows(&stdout(&["table1"]));
    assert_eq!(rows.len(), 9);
    let zero = rows.iter().find(|r| r[0] == "0").unwrap();
    assert!((field(zero, 3) - 0.3618).abs() < 1e-4);
    assert!((field(zero, 5) - 0.3618).abs() < 2e-3);
    assert!((field(zero, 7) - 0.3367).abs() < 1e-4);
}

#[test]
fn value_table_point() {
    let rows = rows(&stdout(&["table2"]));
    assert_eq!(rows.len(), 15);
    let row = rows.iter().find(|r| r[0] == "0.5+τ").unwrap();
    assert!((field(row, 2) - 0.5).abs() < 1e-12);
    assert!((field(row, 3) - 0.3318).abs() < 1e-4);
}

#[test]
fn single_frequency_refinement() {
    assert_eq!(rows(&stdout(&["table1", "--n", "1"])).len(), 1);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = run(&["compare", "--grid", "0:15:101", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn header_records_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coeffs.csv");
    let out = run(&[
        "coeffs",
        "--estimator",
        "sum",
        "--n",
        "2",
        "--passes",
        "12",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(Path::new(&path)).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# quasifourier-cli "));
    let config = lines.next().unwrap().strip_prefix("# config ").unwrap();
    let json: serde_json::Value = serde_json::from_str(config).unwrap();
    assert_eq!(json["n"], 2);
    assert_eq!(json["path"], "passes 12");
    assert_eq!(json["segments"], 12);
    assert_eq!(json["estimator"], "sum");
    assert_eq!(rows(&text).len(), 4);
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(run(&["table1", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["points", "--window", "wide"]).status.code(), Some(1));
    assert_eq!(run(&["table1", "--passes", "3", "--wraps", "2"]).status.code(), Some(1));
    assert_eq!(run(&["table1", "--range", "1"]).status.code(), Some(1));
}

#[test]
fn shifted_window_lowers_the_singular_error() {
    let rows = rows(&stdout(&["singularity"]));
    let default = rows.iter().find(|r| r[0] == "default").unwrap();
    let shifted = rows.iter().find(|r| r[0] == "shifted").unwrap();
    assert!(field(shifted, 2) < field(default, 2));
}

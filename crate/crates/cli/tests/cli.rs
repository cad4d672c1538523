use std::process::{Command, Output};

use serde_json::Value;

fn micz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_micz"))
        .args(args)
        .env_remove("MICZ_TOL_OVERRIDE")
        .output()
        .expect("run micz")
}

/// Header and records of a CSV output, skipping the `#` preamble.
fn csv_table(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<String> {
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].clone()).collect()
}

fn floats(v: Vec<String>) -> Vec<f64> {
    v.iter().map(|s| s.parse().unwrap()).collect()
}

#[test]
fn flat_spectrum() {
    let out = micz(&["spectrum", "--geometry", "flat", "--s", "0", "--n-max", "2"]);
    assert!(out.status.success());
    let (h, rows) = csv_table(&out);
    let mut e = floats(column(&h, &rows, "energy"));
    e.dedup();
    assert_eq!(e, vec![-0.5, -0.125]);
    assert_eq!(rows.len(), 5);
}

#[test]
fn sphere_spectrum_json() {
    let out = micz(&[
        "spectrum",
        "--geometry",
        "sphere",
        "--radius",
        "1",
        "--n-max",
        "2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let cols: Vec<&str> = v["columns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    let i = cols.iter().position(|&c| c == "energy").unwrap();
    let mut e: Vec<f64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[i].as_f64().unwrap())
        .collect();
    e.dedup();
    assert_eq!(e, vec![-0.5, 1.375]);
    assert_eq!(v["config"]["physics"]["geometry"], "sphere");
}

#[test]
fn hyperboloid_spectrum_marks_bound_rows() {
    let out = micz(&[
        "spectrum",
        "--geometry",
        "hyperboloid",
        "--radius",
        "10",
        "--n-max",
        "10",
        "--j",
        "0",
    ]);
    assert!(out.status.success());
    let (h, rows) = csv_table(&out);
    let bound = column(&h, &rows, "bound");
    let bracket = column(&h, &rows, "bracket");
    assert_eq!(rows.len(), 10);
    assert_eq!(bound.iter().filter(|b| *b == "true").count(), 3);
    assert_eq!(bracket.iter().filter(|b| *b == "true").count(), 2);
    // rows without a bound state carry no energy
    for (b, e) in bound.iter().zip(column(&h, &rows, "energy")) {
        assert_eq!(b == "true", !e.is_empty());
    }
}

#[test]
fn flat_ground_state_samples() {
    let out = micz(&[
        "wavefunction",
        "--n",
        "1",
        "--j",
        "0",
        "--m",
        "0",
        "--points",
        "0.5,1,2",
    ]);
    assert!(out.status.success());
    let (h, rows) = csv_table(&out);
    assert_eq!(h, ["r", "R", "Z_re", "Z_im", "psi_re", "psi_im"]);
    let r = floats(column(&h, &rows, "r"));
    let radial = floats(column(&h, &rows, "R"));
    for (x, y) in r.iter().zip(&radial) {
        assert!((y - 2.0 * (-x).exp()).abs() < 1e-15);
    }
}

#[test]
fn sphere_ground_state_decays() {
    let out = micz(&[
        "wavefunction",
        "--geometry",
        "sphere",
        "--radius",
        "2",
        "--n",
        "1",
        "--j",
        "0",
        "--m",
        "0",
        "--count",
        "50",
    ]);
    assert!(out.status.success());
    let (h, rows) = csv_table(&out);
    let r = floats(column(&h, &rows, "R"));
    assert_eq!(r.len(), 50);
    assert!(r.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn samples_round_trip_exactly() {
    let args = [
        "wavefunction",
        "--geometry",
        "sphere",
        "--radius",
        "3.7",
        "--s",
        "1/2",
        "--lambda1",
        "0.3",
        "--lambda2",
        "0.9",
        "--n",
        "7/2",
        "--j",
        "3/2",
        "--m",
        "-1/2",
        "--count",
        "40",
        "--theta",
        "0.7",
        "--phi",
        "1.1",
    ];
    let csv_out = micz(&args);
    let json_out = micz(&[&args[..], &["--format", "json"]].concat());
    assert!(csv_out.status.success() && json_out.status.success());
    let (h, rows) = csv_table(&csv_out);
    let v: Value = serde_json::from_slice(&json_out.stdout).unwrap();
    let json_rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), json_rows.len());
    for (c, j) in rows.iter().zip(json_rows) {
        for (k, text) in c.iter().enumerate() {
            let x: f64 = text.parse().unwrap();
            assert_eq!(x, j[k].as_f64().unwrap(), "column {}", h[k]);
            // the printed form is the shortest exact one: reprinting changes nothing
            assert_eq!(format!("{x:?}"), *text);
            assert_eq!(format!("{x:.16e}").parse::<f64>().unwrap(), x);
        }
    }
    let preamble = String::from_utf8(csv_out.stdout).unwrap();
    assert!(preamble.lines().any(|l| l.starts_with("# notation ")));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "spectrum",
        "--geometry",
        "hyperboloid",
        "--radius",
        "30",
        "--n-max",
        "4",
        "--s",
        "1",
        "--lambda1",
        "0.75",
    ];
    assert_eq!(micz(&args).stdout, micz(&args).stdout);
}

#[test]
fn invalid_state_exits_2() {
    let out = micz(&["wavefunction", "--n", "2", "--j", "3", "--m", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "invalid-state");
    assert_eq!(err["violations"][0]["rule"], "j_above_n_minus_one");
    let out = micz(&["spectrum", "--n-max", "2", "--mu", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = micz(&[
        "wavefunction",
        "--geometry",
        "hyperboloid",
        "--radius",
        "10",
        "--n",
        "4",
        "--j",
        "0",
        "--m",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flags_are_rejected() {
    assert_eq!(
        micz(&["spectrum", "--n-max", "2", "--colour", "red"]).status.code(),
        Some(2)
    );
    assert_eq!(micz(&["spectrum", "--n-max", "0.3"]).status.code(), Some(2));
}

#[test]
fn half_integer_spellings_agree() {
    let a = micz(&["spectrum", "--s", "1/2", "--n-max", "5/2"]);
    let b = micz(&["spectrum", "--s", "0.5", "--n-max", "2.5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_suites_pass() {
    for suite in ["identities", "reductions"] {
        let out = micz(&["verify", "--suite", suite]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        let (h, rows) = csv_table(&out);
        assert!(!rows.is_empty());
        assert!(column(&h, &rows, "passed").iter().all(|p| p == "true"));
    }
    let out = micz(&["verify", "--suite", "oracle", "--geometry", "sphere"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_fails_under_a_tiny_tolerance() {
    let out = Command::new(env!("CARGO_BIN_EXE_micz"))
        .args(["verify", "--suite", "identities"])
        .env("MICZ_TOL_OVERRIDE", "1e-9")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn limit_ratios_approach_four() {
    let out = micz(&[
        "limit",
        "--geometry",
        "sphere",
        "--n",
        "2",
        "--j",
        "1",
        "--m",
        "0",
        "--lambda1",
        "0.5",
        "--s",
        "0",
    ]);
    assert!(out.status.success());
    let (h, rows) = csv_table(&out);
    let ratios = column(&h, &rows, "ratio");
    assert!(ratios[0].is_empty());
    for r in floats(ratios[1..].to_vec()) {
        assert!((r - 4.0).abs() < 0.2);
    }
}

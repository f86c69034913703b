use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}.toml", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_timesep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    let out = run(&all);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn validate_exit_codes() {
    let (code, v) = run_json(&["validate", &fixture("minkowski"), "--samples", "1000"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["violations"].as_array().unwrap().len(), 0);
    let (code, _) = run_json(&["validate", &fixture("cone_cylinder"), "--samples", "1000"]);
    assert_eq!(code, 0);
    let (code, v) = run_json(&["validate", &fixture("broken_riemannian_g")]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["counts"]["WrongSignature"], 1000);
}

#[test]
fn split_reports() {
    let (code, v) = run_json(&["split", &fixture("minkowski"), "--point", "0,0,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["eigenvalue"].as_f64(), Some(-1.0));
    let dir: Vec<f64> = serde_json::from_value(v["result"]["direction"].clone()).unwrap();
    assert_eq!(dir, vec![1.0, 0.0, 0.0, 0.0]);
    assert_eq!(v["result"]["causal_class"], "Timelike");

    let (code, v) = run_json(&[
        "split",
        &fixture("schwarzschild"),
        "--point",
        "0,4,1.5707963,0",
    ]);
    assert_eq!(code, 0);
    assert!((v["result"]["eigenvalue"].as_f64().unwrap() + 0.5).abs() < 1e-12);

    let (code, v) = run_json(&[
        "split",
        &fixture("schwarzschild"),
        "--point",
        "0,2,1.5707963,0",
    ]);
    assert_eq!(code, 1);
    assert!(v["error"].as_str().unwrap().contains("excluded"));
}

#[test]
fn orient_exit_codes_and_caveat() {
    let (code, v) = run_json(&["orient", &fixture("cone_cylinder")]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["verdict"], "NotOrientable");
    assert_eq!(v["result"]["loops"][0]["holonomy"], -1);
    assert_eq!(v["result"]["loops"][1]["holonomy"], 1);

    let (code, v) = run_json(&["orient", &fixture("cone_cylinder_doubleloop")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "Orientable-on-tested-loops");
    let w = v["warnings"][0].as_str().unwrap();
    assert!(w.contains("tested loops"));
}

#[test]
fn section_lists_zeros() {
    let (code, v) = run_json(&[
        "section",
        &fixture("cone_cylinder"),
        "--multiplier",
        "cos(theta)",
        "--grid",
        "theta=0:2*pi:512",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["zero_brackets"].as_array().unwrap().len(), 2);
    assert_eq!(v["result"]["samples"].as_array().unwrap().len(), 512);
}

#[test]
fn derive_space_and_verbose() {
    let (code, v) = run_json(&[
        "derive",
        &fixture("schwarzschild"),
        "--mode",
        "space",
        "--coeffs",
        "1,0,0",
        "--field",
        "1,r,0,sin(phi)",
        "--point",
        "0,4,pi/2,0",
        "--verbose",
    ]);
    assert_eq!(code, 0);
    let d: Vec<f64> = serde_json::from_value(v["result"]["derivative"].clone()).unwrap();
    let s = 0.5_f64.sqrt();
    assert!((d[0] - 0.125 * s).abs() < 1e-12);
    assert!((d[1] - 0.5 * s).abs() < 1e-12);
    assert!(!v["result"]["christoffel"].as_array().unwrap().is_empty());
}

#[test]
fn derive_space_needs_coeffs() {
    let out = run(&[
        "derive",
        &fixture("minkowski"),
        "--mode",
        "space",
        "--field",
        "1,0,0,0",
        "--point",
        "0,0,0,0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--coeffs"));
}

#[test]
fn christoffel_text_dump() {
    let out = run(&[
        "christoffel",
        &fixture("schwarzschild"),
        "--point",
        "0,4,pi/2,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Γ^r_{t t} = 0.03125"));
}

#[test]
fn errors_go_to_stderr() {
    let out = run(&["split", "/nonexistent.toml", "--point", "0,0,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let out = run(&["split", &fixture("minkowski"), "--point", "0,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("4 comma separated"));
    let out = run(&[
        "section",
        &fixture("minkowski"),
        "--multiplier",
        "2M",
        "--grid",
        "x=0:1:4",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_round_trips_without_loss() {
    let out = run(&[
        "split",
        &fixture("schwarzschild"),
        "--point",
        "0,5,1.1,0.3",
        "--output",
        "json",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    let g: Vec<Vec<f64>> = serde_json::from_value(v["result"]["g"].clone()).unwrap();
    assert_eq!(g[2][2], 25.0);
    assert_eq!(g[0][0], -(1.0 - 2.0 / 5.0));
}

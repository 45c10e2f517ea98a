use std::process::{Command, Output};

use serde_json::Value;

fn borel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_borel")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("borel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn describe_sizes() {
    let out = borel(&["describe", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["R"], 2);
    assert_eq!(v["d"], serde_json::json!([2, 0]));
    assert_eq!(borel(&["describe", "--n", "2"]).status.code(), Some(0));
    assert_eq!(borel(&["describe", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    let out = borel(&["verify", "semiinv", "--n", "5", "--trials", "20", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["passed"], true);

    let out = borel(&["verify", "pukanszky", "--n", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    for rep in v["reports"].as_array().unwrap() {
        let conds = rep["conditions"].as_array().unwrap();
        assert_eq!(conds.len(), 4);
        assert!(conds.iter().all(|c| c["pass"] == true));
    }

    let out = borel(&["verify", "dp", "--n", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["report"]["degree"], 36);

    for suite in ["involutivity", "casimir", "ninv"] {
        let out = borel(&["verify", suite, "--n", "3", "--trials", "3"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
    }
}

#[test]
fn verify_usage_errors() {
    assert_eq!(borel(&["verify", "bogus", "--n", "3"]).status.code(), Some(2));
    assert_eq!(borel(&["verify", "semiinv", "--n", "4", "--r", "3"]).status.code(), Some(2));
    assert_eq!(borel(&["verify", "dp", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let a = borel(&["verify", "pukanszky", "--n", "4", "--seed", "9"]);
    let b = borel(&["verify", "pukanszky", "--n", "4", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    let args = ["heisenberg", "--grid", "64", "--L", "6", "--lmax", "4", "--nlambda", "40"];
    assert_eq!(borel(&args).stdout, borel(&args).stdout);
}

#[test]
fn toda_random_runs() {
    for (n, bound) in [("2", 1e-10), ("4", 1e-8)] {
        let csv = tmp(&format!("toda{n}.csv"));
        let out = borel(&["toda", "--n", n, "--t", "10", "--dt", "0.001", "--random", "--seed", "1", "--out", csv.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let summary = json_of(&out);
        assert!(summary["max_drift"].as_f64().unwrap() <= bound, "{summary}");
        let text = std::fs::read_to_string(&csv).unwrap();
        assert!(text.starts_with("t,tr1,"));
        assert_eq!(text.lines().count(), 10_002);
    }
}

#[test]
fn toda_usage_errors() {
    assert_eq!(borel(&["toda", "--n", "3", "--dt", "0", "--random"]).status.code(), Some(2));
    assert_eq!(borel(&["toda", "--n", "3", "--dt", "-0.1", "--random"]).status.code(), Some(2));
    assert_eq!(borel(&["toda", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn toda_from_file() {
    let x0 = tmp("x0.json");
    std::fs::write(&x0, r#"{"rows":2,"cols":2,"entries":[[0.1,1.0],[0.8,-0.1]]}"#).unwrap();
    let csv = tmp("x0.csv");
    let out = borel(&["toda", "--x0", x0.to_str().unwrap(), "--t", "1", "--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let bad = tmp("bad.json");
    std::fs::write(&bad, r#"{"rows":2,"cols":2,"entries":[[0.1,3.0],[0.8,-0.1]]}"#).unwrap();
    assert_eq!(borel(&["toda", "--x0", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn cross_section_recovers_kappa() {
    let x = tmp("x.json");
    std::fs::write(&x, r#"{"rows":3,"cols":3,"entries":[[1,1,0],[0,2,1],[1,0,1]]}"#).unwrap();
    let out = borel(&["cross-section", x.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["kappa"], serde_json::json!(["1", "2"]));
    assert_eq!(v["casimirs_match"], true);
    assert_eq!(v["chart"]["p0_1"], "1");
}

#[test]
fn dp_symbol_shape() {
    let out = borel(&["dp-symbol", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["alpha"], serde_json::json!([2, 1]));
    assert_eq!(v["degree"], 4);
    assert!(v["weight_beta"].is_array());
    assert!(v["identity_checks"].is_object());
}

#[test]
fn heisenberg_modes() {
    assert_eq!(borel(&["heisenberg", "--grid", "32"]).status.code(), Some(2));
    assert_eq!(borel(&["heisenberg", "--grid", "96"]).status.code(), Some(2));
    let out = borel(&["heisenberg", "--function", "zero", "--grid", "64"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!((v["lhs"].as_f64(), v["rhs"].as_f64()), (Some(0.0), Some(0.0)));
    let out = borel(&["heisenberg", "--grid", "64", "--L", "6", "--lmax", "4", "--nlambda", "40"]);
    let v = json_of(&out);
    for key in ["grid", "L", "lmax", "nlambda", "lhs", "rhs", "ratio"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let expected = if v["pass"] == true { 0 } else { 1 };
    assert_eq!(out.status.code(), Some(expected));
}

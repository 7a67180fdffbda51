use std::f64::consts::{PI, TAU};

use ricci_lab_cli::{run, EXIT_NUMERICAL, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ricci-lab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn invoke_json(args: &[&str]) -> Value {
    let (code, out, err) = invoke(args);
    assert_eq!(code, EXIT_OK, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn solve_embedded_example() {
    let v = invoke_json(&["solve", "--c", "1", "--m", "0.51", "--p", "1", "--q", "1", "--format", "json"]);
    assert_eq!(v["command"], "solve");
    let ell = v["result"]["ell"].as_f64().unwrap();
    let theta = v["result"]["theta"].as_f64().unwrap();
    assert!((ell - 0.73).abs() < 5e-3, "ell = {ell}");
    assert!((theta - TAU).abs() <= 1e-10);
    assert_eq!(v["result"]["closure"]["embedded"], true);
}

#[test]
fn period_both_methods_agree_on_pi() {
    let v = invoke_json(&["period", "--a", "4", "--c", "1", "--m", "0.5", "--ell", "0.8", "--format", "json"]);
    for key in ["quadrature", "orbit"] {
        let t = v["result"][key].as_f64().unwrap();
        assert!((t - PI).abs() < 1e-8, "{key} = {t}");
    }
}

#[test]
fn classify_boundary() {
    let (code, out, _) = invoke(&["classify", "--c", "1", "--m", "0.25", "--ell", "0.5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "BoundaryConstant");
}

#[test]
fn classify_outside_and_prime() {
    let (_, out, _) = invoke(&["classify", "--m", "0.5", "--ell", "0.6"]);
    assert_eq!(out.trim(), "Outside");
    let (_, out, _) = invoke(&["classify", "--m", "0.2", "--ell", "0.5"]);
    assert_eq!(out.trim(), "InteriorLambdaPrime");
}

#[test]
fn inputs_round_trip() {
    let args = ["theta", "--c", "1", "--m", "0.3", "--ell", "0.6", "--format", "json"];
    let v = invoke_json(&args);
    let inputs = &v["inputs"];
    assert_eq!(inputs["c"], 1.0);
    assert_eq!(inputs["m"], 0.3);
    assert_eq!(inputs["ell"], 0.6);
    assert_eq!(inputs["format"], "json");
    let back: ricci_lab_cli::ThetaArgs = serde_json::from_value(inputs.clone()).unwrap();
    assert_eq!(back.m, 0.3);
    assert_eq!(back.q_max, 50);
}

#[test]
fn output_is_deterministic() {
    let args = ["scan", "--m-min", "0.1", "--m-max", "0.5", "--ell-min", "0.4", "--ell-max", "0.7", "--nm", "4", "--nl", "5"];
    let (c1, a, _) = invoke(&args);
    let (c2, b, _) = invoke(&args);
    assert_eq!(c1, EXIT_OK);
    assert_eq!(c2, EXIT_OK);
    assert_eq!(a, b);
    assert!(a.starts_with("m,ell,Theta,closed,p,q,embedded\n"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(invoke(&[]).0, EXIT_USAGE);
    assert_eq!(invoke(&["nonsense"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["solve", "--m", "0.5"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["theta", "--m", "inf", "--ell", "0.6"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["theta", "--m", "0.3", "--ell", "0.6", "--format", "obj"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["profile", "--m", "0.51", "--p", "1"]).0, EXIT_USAGE);
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("solve"));
    assert_eq!(invoke(&["--version"]).0, EXIT_OK);
}

#[test]
fn precondition_errors_exit_2() {
    assert_eq!(invoke(&["solve", "--m", "1.5", "--p", "1", "--q", "1"]).0, EXIT_PRECONDITION);
    assert_eq!(invoke(&["theta", "--m", "0.5", "--ell", "0.6"]).0, EXIT_PRECONDITION);
    assert_eq!(invoke(&["classify", "--c=-1", "--m", "0.5", "--ell", "0.6"]).0, EXIT_PRECONDITION);
    let (code, _, err) = invoke(&["mesh", "--m", "0.51", "--p", "1", "--q", "1", "--ns", "32", "--nt", "8"]);
    assert_eq!(code, EXIT_PRECONDITION);
    assert!(err.contains("invalid_mesh"));
}

#[test]
fn numerical_errors_exit_3() {
    let (code, _, err) = invoke(&["solve", "--m", "0.51", "--p", "1", "--q", "7"]);
    assert_eq!(code, EXIT_NUMERICAL);
    assert!(err.contains("no_bracket"));
}

#[test]
fn mesh_obj_is_watertight_torus() {
    let (code, out, err) = invoke(&["mesh", "--m", "0.51", "--p", "1", "--q", "1", "--ns", "32", "--nt", "8", "--project"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out.lines().filter(|l| l.starts_with("v ")).count(), 256);
    assert_eq!(out.lines().filter(|l| l.starts_with("f ")).count(), 256);

    let v = invoke_json(&["mesh", "--m", "0.51", "--p", "1", "--q", "1", "--ns", "32", "--nt", "8", "--format", "json"]);
    assert_eq!(v["result"]["euler_characteristic"], 0);
    assert_eq!(v["result"]["watertight"], true);
}

#[test]
fn profile_solves_when_ell_missing() {
    let (code, out, err) = invoke(&["profile", "--m", "0.51", "--p", "1", "--q", "1", "--ns", "64"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "s,theta,x1,x2,x3,x4");
    assert!(lines.count() >= 64);
}

#[test]
fn minimal_map_both_directions() {
    let v = invoke_json(&["minimal", "--j", "0.3", "--format", "json"]);
    let m = v["result"]["m"].as_f64().unwrap();
    assert_eq!(v["result"]["ell"], 0.5);
    let v = invoke_json(&["minimal", "--m", &m.to_string(), "--format", "json"]);
    assert!((v["result"]["j"].as_f64().unwrap() - 0.3).abs() < 1e-12);
}

#[test]
fn verify_reports_small_residual() {
    let v = invoke_json(&["verify", "--m", "0.5", "--ell", "0.8", "--format", "json"]);
    assert!(v["result"]["normalized"].as_f64().unwrap() < 1e-10);
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("ricci-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("theta.json");
    let (code, out, _) = invoke(&["theta", "--m", "0.3", "--ell", "0.6", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "theta");
    std::fs::remove_dir_all(&dir).unwrap();
}

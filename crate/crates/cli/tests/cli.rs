use std::process::{Command, Output};

use ncsphere::coeff::ParamScalar;
use ncsphere::exprio::format_rmatrix;
use ncsphere::frt::standard_r;
use serde_json::Value;

fn ncsphere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncsphere")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = ncsphere(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON for {args:?}: {e}"));
    (out.status.code().unwrap(), v)
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn verify_catalog_projectors_pass() {
    for target in ["projector_e", "projector_f", "projector_etilde", "sphere2", "sphere4", "sphere4_star"] {
        let (code, r) = json(&["verify", target]);
        assert_eq!(code, 0, "{target}: {r}");
        assert_eq!(r["passed"], true);
    }
    let (_, r) = json(&["verify", "projector_e"]);
    assert_eq!(check(&r, "idempotent")["status"], "pass");
    assert_eq!(check(&r, "self_adjoint")["status"], "pass");
}

#[test]
fn verify_all_passes() {
    let (code, r) = json(&["verify", "all"]);
    assert_eq!(code, 0);
    assert!(r["checks"].as_array().unwrap().len() > 20);
}

#[test]
fn trivial_block_passes_and_broken_block_fails() {
    assert_eq!(ncsphere(&["verify", "block", "--t", "I", "--ttilde", "I", "--z", "0"]).status.code(), Some(0));
    let (code, r) = json(&["verify", "block", "--t", "I", "--ttilde", "I", "--z", "1/2"]);
    assert_eq!(code, 1);
    assert_eq!(check(&r, "det_condition")["status"], "fail");
    assert!(check(&r, "idempotent")["witness"].as_str().unwrap().starts_with("entry (1, 1)"));
}

#[test]
fn block_from_monopole_data() {
    let t = "[[2/(1+s^2)*(1-zeta)-1, 2/(1+s^2)*xi], [-2/(1+s^2)*eta, 2/(1+s^2)*(s^2+q^2*zeta)-1]]";
    let out = ncsphere(&["verify", "block", "--t", t, "--z", "2*Z/(1+s^2)"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn non_central_z_is_reported() {
    let (code, r) = json(&["verify", "block", "--t", "I", "--z", "zeta"]);
    assert_eq!(code, 1);
    assert_eq!(check(&r, "z_central")["status"], "fail");
}

#[test]
fn chern_examples() {
    let (code, r) = json(&["chern", "--projector", "e", "--degree", "0", "--expect", "zero"]);
    assert_eq!(code, 0);
    assert!(check(&r, "ch0")["details"].as_str().unwrap().starts_with("zero"));
    let (code, _) = json(&["chern", "--projector", "etilde", "--degree", "2", "--expect", "zero"]);
    assert_eq!(code, 0);
    for q in ["q=1", "q=-1"] {
        let (code, _) = json(&["chern", "--projector", "e", "--degree", "1", "--specialize", q, "--expect", "zero"]);
        assert_eq!(code, 0, "{q}");
    }
    let (code, r) = json(&["chern", "--projector", "e", "--degree", "1", "--expect", "nonzero"]);
    assert_eq!(code, 0);
    assert!(check(&r, "proportionality")["details"].as_str().unwrap().contains("(1)"));
    let (code, _) = json(&["chern", "--projector", "e", "--degree", "1", "--expect", "zero"]);
    assert_eq!(code, 1);
}

#[test]
fn chern_degree_cap_is_a_usage_error() {
    assert_eq!(ncsphere(&["chern", "--projector", "e", "--degree", "3"]).status.code(), Some(2));
    assert_eq!(ncsphere(&["chern", "--projector", "nope", "--degree", "1"]).status.code(), Some(2));
}

#[test]
fn frt_pipeline_n2_reports_determinant() {
    let (code, r) = json(&["frt", "--n", "2", "--check", "ybe,det,sphere"]);
    assert_eq!(code, 0, "{r}");
    let d = check(&r, "det")["witness"].as_str().unwrap();
    assert_eq!(d, "D = -q*t12*t21 + t11*t22");
    assert_eq!(check(&r, "sphere")["status"], "pass");
}

#[test]
fn frt_ybe_n3_passes() {
    let (code, r) = json(&["frt", "--n", "3", "--check", "ybe"]);
    assert_eq!(code, 0);
    assert_eq!(r["checks"].as_array().unwrap().len(), 1);
}

#[test]
fn frt_perturbed_rmatrix_fails_with_witness() {
    let mut r = standard_r(2);
    r.set(0, 0, ParamScalar::from_int(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.rm");
    std::fs::write(&path, format_rmatrix(&r)).unwrap();
    let (code, rep) = json(&["frt", "--rmatrix", path.to_str().unwrap(), "--check", "ybe"]);
    assert_eq!(code, 1);
    let w = check(&rep, "ybe")["witness"].as_str().unwrap();
    assert!(w.starts_with("entry ("), "{w}");
}

#[test]
fn frt_symbolic_cap_is_a_usage_error() {
    assert_eq!(ncsphere(&["frt", "--n", "4", "--check", "det"]).status.code(), Some(2));
    assert_eq!(ncsphere(&["frt", "--n", "4", "--check", "ybe"]).status.code(), Some(0));
    assert_eq!(ncsphere(&["frt", "--n", "2", "--check", "bogus"]).status.code(), Some(2));
}

#[test]
fn repr_defaults_pass_and_write_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("spectrum.csv");
    let (code, r) = json(&["repr", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["params"]["K"], 30);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 31);
    assert!(text.starts_with("k,zeta,radicand,omega"));
}

#[test]
fn repr_domain_violation_exits_2() {
    assert_eq!(ncsphere(&["repr", "--c-re", "1.5"]).status.code(), Some(2));
    assert_eq!(ncsphere(&["repr", "--q", "1.5"]).status.code(), Some(2));
}

#[test]
fn repr_slow_parameters_pass() {
    assert_eq!(ncsphere(&["repr", "--q", "0.9", "--K", "60"]).status.code(), Some(0));
    assert_eq!(ncsphere(&["repr", "--sign", "-", "--q", "-0.4"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ncsphere(&["verify"]).status.code(), Some(2));
    assert_eq!(ncsphere(&["verify", "sphere7"]).status.code(), Some(2));
    assert_eq!(ncsphere(&["verify", "block", "--t", "[[x"]).status.code(), Some(2));
    assert_eq!(ncsphere(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_field_order_is_stable() {
    let out = ncsphere(&["--json", "verify", "projector_f"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(pos("task") < pos("params") && pos("params") < pos("checks") && pos("checks") < pos("passed"));
    let c = &serde_json::from_str::<Value>(&text).unwrap()["checks"][0];
    let keys: Vec<&str> = c.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys.len(), 5);
    for k in ["name", "status", "details", "witness", "wall_ms"] {
        assert!(keys.contains(&k));
    }
}

#[test]
fn catalog_and_export() {
    let out = ncsphere(&["catalog"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("sphere2") && text.contains("sphere4"));
    let out = ncsphere(&["export", "sphere4"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], "ncsphere.presentation/1");
    assert_eq!(ncsphere(&["export", "nope"]).status.code(), Some(2));
}

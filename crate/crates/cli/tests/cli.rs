use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confblocks"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, bool) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = run(&full);
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON report");
    (v, out.status.success())
}

#[test]
fn dim_by_rank() {
    let (v, ok) = json(&["cb", "dim", "--lambda", "3,3", "--level", "2", "--method", "rank", "--seed", "7"]);
    assert!(ok);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["summary"]["value"], 4);
}

#[test]
fn dim_by_recursion() {
    let (v, ok) = json(&["cb", "dim", "--lambda", "5,4", "--level", "3", "--method", "recursion"]);
    assert!(ok);
    assert_eq!(v["summary"]["value"], 34);
}

#[test]
fn kz_exponent() {
    let (v, ok) = json(&["kz", "check", "--m", "2", "--n", "1"]);
    assert!(ok);
    assert_eq!(v["summary"]["a_ij"], "-2/3");
    assert_eq!(v["summary"]["verified"], true);
    assert!(v["summary"]["residual"].is_null());
}

#[test]
fn kz_exponent_sl() {
    let (v, ok) = json(&["kz", "check", "--m", "2", "--n", "1", "--casimir", "sl"]);
    assert!(ok);
    assert_eq!(v["summary"]["a_ij"], "-1/2");
}

#[test]
fn lagrange_fuzz() {
    let (v, ok) = json(&["identity", "lagrange", "--fuzz", "100", "--seed", "1"]);
    assert!(ok);
    assert_eq!(v["summary"]["pass"], 100);
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn flag_fuzz() {
    let (v, ok) = json(&["identity", "flag", "--fuzz", "20", "--seed", "3"]);
    assert!(ok);
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn pz_build_at_integers() {
    let out = run(&["pz", "build", "--lambda", "1,1", "--z", "0,1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[P] -1 * y[1,1] * y[2,2] + 1 * y[1,2] * y[2,1]"), "{text}");
}

#[test]
fn verify_weight_certificate() {
    let (v, ok) = json(&["cb", "verify", "--lambda", "2,1", "--z", "1,-2,3/4"]);
    assert!(ok);
    assert_eq!(v["summary"]["weight"], serde_json::json!([2, 1]));
    assert_eq!(v["summary"]["cb_member"], true);
}

#[test]
fn verify_rejects_non_member() {
    let path = std::env::temp_dir().join(format!("confblocks-nonmember-{}.txt", std::process::id()));
    std::fs::write(&path, "y[1,1] * y[2,2]").unwrap();
    let (v, ok) = json(&["cb", "verify", "--lambda", "1,1", "--z", "1,2", "--input", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(!ok);
    assert_eq!(v["summary"]["singular"], false);
    assert_eq!(v["summary"]["failing_operator"], "e[1,2]");
}

#[test]
fn domain_error_is_a_failed_entry() {
    let (v, ok) = json(&["cb", "dim", "--lambda", "4,1", "--level", "2"]);
    assert!(!ok);
    assert_eq!(v["results"][0]["name"], "error");
    assert_eq!(v["results"][0]["status"], "fail");
}

#[test]
fn usage_error() {
    let out = run(&["cb", "dim", "--lambda", "3,3"]);
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty());
}

#[test]
fn qw_basis_spans() {
    let (v, ok) = json(&["cb", "basis", "--lambda", "3,2", "--level", "2", "--kind", "qw"]);
    assert!(ok);
    assert_eq!(v["summary"]["rank"], 4);
    assert_eq!(v["certificates"].as_array().unwrap().len(), 4);
}

#[test]
fn decorated_basis() {
    let (v, ok) = json(&["cb", "basis", "--lambda", "4,2", "--level", "2", "--kind", "decorated", "--schur", "0;1;1,1"]);
    assert!(ok);
    assert_eq!(v["summary"]["rank"], 3);
    assert_eq!(v["summary"]["cb_dim"], 4);
}

#[test]
fn ltable_rows() {
    let (v, ok) = json(&["cb", "ltable", "--level", "3", "--max-size", "9"]);
    assert!(ok);
    let dims: Vec<u64> = v["summary"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|row| row.as_array().unwrap().iter().map(|c| c["dim"].as_u64().unwrap()))
        .collect();
    assert_eq!(dims, vec![1, 1, 1, 1, 2, 1, 2, 3, 5, 3, 5, 8, 13, 8, 13, 21, 34, 21]);
}

#[test]
fn asymptotic_modes() {
    let (v, ok) = json(&["asym", "check", "--lambda", "2,1", "--mode", "nested"]);
    assert!(ok);
    assert_eq!(v["summary"]["exponents"], serde_json::json!([0, 1, 1]));
    let (v, ok) = json(&["asym", "check", "--lambda", "3,3", "--mode", "remark42"]);
    assert!(ok);
    assert_eq!(v["summary"]["sign"], 1);
}

#[test]
fn remark52_identity() {
    let (_, ok) = json(&["identity", "remark52", "--m", "2", "--n", "2"]);
    assert!(ok);
}

#[test]
fn accept_filter() {
    let (v, ok) = json(&["accept", "--only", "kz,6"]);
    assert!(ok);
    let names: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, vec!["criterion 6 qw", "criterion 7 kz"]);
}

#[test]
fn same_seed_same_bytes() {
    for args in [
        &["cb", "dim", "--lambda", "4,2", "--level", "3", "--seed", "11"][..],
        &["pz", "build", "--lambda", "2,1,1", "--seed", "5"][..],
        &["identity", "flag", "--fuzz", "10", "--seed", "9", "--json"][..],
        &["cb", "basis", "--lambda", "3,3", "--level", "2", "--kind", "qu", "--seed", "2"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn different_seed_different_z() {
    let a = run(&["pz", "build", "--lambda", "1,1", "--seed", "1"]).stdout;
    let b = run(&["pz", "build", "--lambda", "1,1", "--seed", "2"]).stdout;
    assert_ne!(a, b);
}

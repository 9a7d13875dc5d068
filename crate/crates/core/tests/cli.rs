//! End-to-end tests of the `sp4` binary: exit codes, parameter samples and
//! output determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use sp4::cli::subalgebra_json;
use sp4::linalg::Mat4;
use sp4::sp4::{t_int, x, Root, SAMPLES_ENV};

fn sp4(args: &[&str], samples_env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sp4"));
    cmd.args(args);
    match samples_env {
        Some(v) => cmd.env(SAMPLES_ENV, v),
        None => cmd.env_remove(SAMPLES_ENV),
    };
    cmd.output().expect("binary runs")
}

fn write(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("sp4-it-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

#[test]
fn verify_catalog_with_explicit_params() {
    let o = sp4(
        &["verify-catalog", "--params", "2,3,5,-2,1/2", "--output", "json"],
        None,
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["samples"], serde_json::json!(["2", "3", "5", "-2", "1/2"]));
    assert_eq!(v["pass"], serde_json::json!(true));
}

#[test]
fn samples_from_environment() {
    let o = sp4(&["verify-catalog", "--output", "json"], Some("2,7/3"));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["samples"], serde_json::json!(["2", "7/3"]));
    let o = sp4(&["verify-catalog"], Some("2,x"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["verify-catalog", "--params", "2,-3", "--seed", "7", "--output", "json"];
    let first = stdout(&sp4(&args, None));
    let second = stdout(&sp4(&args, None));
    assert!(!first.is_empty());
    assert_eq!(first, second);
}

#[test]
fn corrupted_catalog_fails_verification() {
    let exported = sp4(&["export-catalog"], None);
    assert_eq!(exported.status.code(), Some(0));
    let mut cat = json(&exported);
    let rows = cat["rows"].as_array_mut().unwrap();
    let row = rows.iter_mut().find(|r| r["row"] == "3.6").unwrap();
    row["degraaf"] = serde_json::json!("L3(-1/5)");
    let p = write("broken-catalog.json", &cat.to_string());
    let o = sp4(
        &["verify-catalog", "--input", p.to_str().unwrap(), "--params", "2"],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn identify_and_invariants() {
    let b = [t_int(3, 1), &x(Root::Alpha) + &x(Root::Beta), x(Root::AlphaPlus2Beta)];
    let p = write("l3.json", &subalgebra_json(&b));
    let o = sp4(&["identify", "--input", p.to_str().unwrap(), "--output", "json"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("L3(-3/16)"));
    let o = sp4(
        &["invariants", "--input", p.to_str().unwrap(), "--output", "json"],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["dim"], serde_json::json!(3));
}

#[test]
fn input_errors_exit_two() {
    let p = write("garbage.json", "{ not json");
    let o = sp4(&["identify", "--input", p.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let o = sp4(&["classify-element"], None);
    assert_eq!(o.status.code(), Some(2));
    let not_symplectic = Mat4::from_ints([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]);
    let p = write("notsp4.json", &serde_json::to_string(&not_symplectic).unwrap());
    assert_eq!(
        sp4(&["classify-element", "--input", p.to_str().unwrap()], None)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn out_of_scope_exits_three() {
    // Eigenvalues ±i: not rational.
    let irr = Mat4::from_ints([[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, -1, 0, 0]]);
    let p = write("irr.json", &serde_json::to_string(&irr).unwrap());
    let o = sp4(&["classify-element", "--input", p.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("hint"));
}

//! End-to-end tests of the binary: exit codes, report contents, error
//! messages, and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn sdbialg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdbialg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&output.stdout))
    })
}

fn stderr_text(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn check_accepts_a_self_distributive_non_counital_instance() {
    let input = fixture("family_t1d_c1.json");
    let out = sdbialg(&[
        "check",
        "--in",
        input.to_str().unwrap(),
        "--expect",
        "consistency,sd,non-counital",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_text(&out));
    let report = stdout_json(&out);
    assert_eq!(report["failed"], Value::Array(vec![]));
    assert_eq!(report["consistency"]["verdict"], Value::Bool(true));
    assert_eq!(report["sd"]["verdict"], Value::Bool(true));
    assert_eq!(report["counit"]["exists"], Value::Bool(false));
}

#[test]
fn check_exits_one_on_a_failed_expectation() {
    let input = fixture("family_t1d_c1.json");
    let out = sdbialg(&["check", "--in", input.to_str().unwrap(), "--expect", "counital"]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["failed"][0], Value::String("counital".into()));
}

#[test]
fn check_rejects_unknown_expectations() {
    let input = fixture("family_t1d_c1.json");
    let out = sdbialg(&["check", "--in", input.to_str().unwrap(), "--expect", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_text(&out).contains("bogus"));
}

#[test]
fn check_rejects_coalgebra_expectations_without_a_comultiplication() {
    let input = fixture("case1_gf5.json");
    let out = sdbialg(&["check", "--in", input.to_str().unwrap(), "--expect", "sd"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_text(&out);
    assert!(err.contains("comultiplication"), "stderr: {err}");
    assert!(err.contains("case1_gf5.json"), "stderr: {err}");
}

#[test]
fn input_errors_exit_two_and_name_the_path() {
    let out = sdbialg(&["check", "--in", "no_such_file.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_text(&out).contains("no_such_file.json"));

    let input = fixture("bad_expr.json");
    let out = sdbialg(&["check", "--in", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_text(&out);
    assert!(err.contains("bad_expr.json"), "stderr: {err}");
    assert!(err.contains("mul[0][1][1]"), "stderr: {err}");
}

#[test]
fn audit_type5_over_gf2_has_an_empty_discrepancy_list() {
    let out = sdbialg(&["audit", "--type", "5", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["sound"], Value::Bool(true));
    assert_eq!(report["missing_from_families"], Value::Array(vec![]));
}

#[test]
fn audit_refuses_large_primes_with_a_cost_estimate() {
    let out = sdbialg(&["audit", "--type", "5", "--p", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_text(&out);
    assert!(err.contains("5764801"), "stderr: {err}");
}

#[test]
fn color_reports_the_reference_counts() {
    let trefoil = fixture("trefoil.json");
    let dihedral3 = fixture("dihedral3.json");
    let out = sdbialg(&[
        "color",
        "--pd",
        trefoil.to_str().unwrap(),
        "--quandle",
        dihedral3.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "{\"colorings\":9}\n");

    let figure8 = fixture("figure8.json");
    let dihedral5 = fixture("dihedral5.json");
    let out = sdbialg(&[
        "color",
        "--pd",
        figure8.to_str().unwrap(),
        "--quandle",
        dihedral5.to_str().unwrap(),
    ]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "{\"colorings\":25}\n");
}

#[test]
fn classify_reports_the_matching_reference_case() {
    let input = fixture("case1_gf5.json");
    let out = sdbialg(&["classify", "--in", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_text(&out));
    let report = stdout_json(&out);
    assert_eq!(report["multiplication"]["matches_case"], Value::from(1));
    assert_eq!(report["field"], Value::String("GF(5)".into()));
}

#[test]
fn classify_scan_finds_the_five_classes() {
    let out = sdbialg(&["classify", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["classes"].as_array().unwrap().len(), 5);
}

#[test]
fn classify_requires_a_prime_field_input() {
    let input = fixture("family_t1d_c1.json");
    let out = sdbialg(&["classify", "--in", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_text(&out).contains("prime field"));
}

#[test]
fn classify_needs_exactly_one_mode() {
    assert_eq!(sdbialg(&["classify"]).status.code(), Some(2));
    let input = fixture("case1_gf5.json");
    let out = sdbialg(&["classify", "--in", input.to_str().unwrap(), "--p", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quandles_checks_the_axioms() {
    let out = sdbialg(&["quandles", "--quandle", fixture("dihedral3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["is_quandle"]["verdict"], Value::Bool(true));

    let out = sdbialg(&["quandles", "--quandle", fixture("not_quandle.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["is_quandle"]["verdict"], Value::Bool(false));
    assert!(!report["is_quandle"]["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn idempotents_reports_the_trivial_quandle_structure() {
    let input = fixture("case1_gf5.json");
    let out = sdbialg(&["idempotents", "--in", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_text(&out));
    let report = stdout_json(&out);
    assert_eq!(report["nonzero_idempotents"].as_array().unwrap().len(), 5);
    assert_eq!(report["direct"]["closed"], Value::Bool(true));
    assert_eq!(report["direct"]["is_quandle"]["verdict"], Value::Bool(true));
}

#[test]
fn families_lists_the_catalog() {
    let out = sdbialg(&["families"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out).as_array().unwrap().len(), 26);

    let out = sdbialg(&["families", "--type", "5"]);
    assert_eq!(stdout_json(&out).as_array().unwrap().len(), 7);
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["families"],
        vec!["classify", "--p", "3"],
        vec!["audit", "--type", "1", "--p", "3"],
        vec!["audit", "--type", "2", "--p", "2", "--pretty"],
    ] {
        let first = sdbialg(&args);
        let second = sdbialg(&args);
        assert_eq!(first.stdout, second.stdout, "args: {args:?}");
    }
}

#[test]
fn pretty_output_holds_the_same_document() {
    let compact = sdbialg(&["audit", "--type", "3", "--p", "2"]);
    let pretty = sdbialg(&["audit", "--type", "3", "--p", "2", "--pretty"]);
    assert!(pretty.stdout.len() > compact.stdout.len());
    assert_eq!(stdout_json(&compact), stdout_json(&pretty));
}

use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn seqdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqdual"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// The number printed after the colon on the first line starting with `label`.
fn value_after(text: &str, label: &str) -> f64 {
    let line = text
        .lines()
        .find(|l| l.starts_with(label))
        .unwrap_or_else(|| panic!("no `{label}` line in {text}"));
    line.split_once(": ")
        .unwrap()
        .1
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap()
}

const L2: &str = r#"{"dim": 2, "norm": {"p": 2}}"#;

fn seq(space: &str, vectors: &str) -> String {
    format!(r#"{{"space": {space}, "vectors": {vectors}}}"#)
}

fn op(domain: &str, codomain: &str, matrix: &str) -> String {
    format!(r#"{{"domain": {domain}, "codomain": {codomain}, "matrix": {matrix}}}"#)
}

#[test]
fn norm_of_a_euclidean_pair() {
    let o = seqdual(&["norm", "lp:2", &seq(L2, "[[3, 4], [0, 0]]")]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(value_after(&stdout(&o), "lp:2"), 5.0);
}

#[test]
fn dual_of_linf_on_scalars_is_the_sum() {
    let scalars = seq(r#"{"dim": 1, "norm": {"p": 2}}"#, "[[1], [2], [3]]");
    let o = seqdual(&["norm", "dual(linf)", &scalars]);
    assert_eq!(value_after(&stdout(&o), "dual(linf)"), 6.0);
    let o = seqdual(&["dualnorm", "linf", &scalars]);
    assert_eq!(value_after(&stdout(&o), "dual(linf)"), 6.0);
}

#[test]
fn rademacher_norm_of_the_unit_vectors() {
    let o = seqdual(&["norm", "rad", &seq(L2, "[[1, 0], [0, 1]]"), "--witness"]);
    let text = stdout(&o);
    assert!((value_after(&text, "rad") - 2f64.sqrt()).abs() < 1e-12);
    assert!(text.contains("witness:"));
}

#[test]
fn operator_norms() {
    let id = op(L2, L2, "[[1, 0], [0, 1]]");
    let o = seqdual(&["opnorm", "lp:2", "lp:2", &id]);
    assert!((value_after(&stdout(&o), "‖T‖") - 1.0).abs() < 1e-9);
    let o = seqdual(&["opnorm", "lpw:2", "lp:2", &id, "--k", "2"]);
    assert!((value_after(&stdout(&o), "‖T‖") - 2f64.sqrt()).abs() < 1e-3);
    let zero = op(L2, L2, "[[0, 0], [0, 0]]");
    let o = seqdual(&["opnorm", "lpw:2", "lp:2", &zero, "--k", "3"]);
    assert_eq!(value_after(&stdout(&o), "‖T‖"), 0.0);
}

#[test]
fn finite_length_coincidences_are_noted() {
    let o = seqdual(&["norm", "c0", &seq(L2, "[[3, 4], [1, 0]]")]);
    let text = stdout(&o);
    assert_eq!(value_after(&text, "c0"), 5.0);
    assert!(text.contains("note: at finite length this class has the same norm as linf"));
    let o = seqdual(&["norm", "lp:2", &seq(L2, "[[3, 4]]")]);
    assert!(!stdout(&o).contains("note:"));
}

#[test]
fn inputs_can_come_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    fs::write(&path, seq(L2, "[[3, 4], [0, 0]]")).unwrap();
    let o = seqdual(&["norm", "lp:1", path.to_str().unwrap()]);
    assert_eq!(value_after(&stdout(&o), "lp:1"), 5.0);
}

#[test]
fn verify_axioms_passes() {
    let o = seqdual(&["verify", "axioms", "--trials", "50", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("suite axioms"));
}

#[test]
fn verify_adjoint_duality_lists_margins() {
    let o = seqdual(&["verify", "theorem-3.5", "--trials", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(
        text.lines().filter(|l| l.contains("margin")).count(),
        1 + 7 * 20
    );
}

#[test]
fn unknown_suites_are_usage_errors() {
    let o = seqdual(&["verify", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown suite"));
}

#[test]
fn syntax_errors_report_line_and_column() {
    let o = seqdual(&["norm", "lp:2", "{\"space\": [\n}"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 1"), "{}", stderr(&o));
}

#[test]
fn unmet_hypotheses_are_named() {
    let id = op(L2, L2, "[[1, 0], [0, 1]]");
    let o = seqdual(&["adjoint-report", "lpw:2", "c0", &id]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("requires lpw:2"), "{}", stderr(&o));
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(
        seqdual(&["norm", "lp:2", "{}", "--method", "magic"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        seqdual(&["norm", "lp:2", "{}", "--restarts", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(seqdual(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn failed_inequalities_exit_with_one() {
    // A three-point grid is far too coarse for either side of the report.
    let t = op(
        r#"{"dim": 2, "norm": {"p": 1}}"#,
        r#"{"dim": 2, "norm": {"p": 3}}"#,
        "[[1, 0.3], [-0.7, 2]]",
    );
    let o = seqdual(&[
        "adjoint-report",
        "lp:2",
        "lp:2",
        &t,
        "--method",
        "bruteforce",
        "--grid",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn json_reports_round_trip_and_are_seed_determined() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let o = seqdual(&[
            "verify",
            "proposition-2.5",
            "--trials",
            "3",
            "--seed",
            "11",
            "--json",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let parsed: Value = serde_json::from_str(&text).unwrap();
    let mut again = serde_json::to_string_pretty(&parsed).unwrap();
    again.push('\n');
    assert_eq!(again, text);
    assert_eq!(parsed["suite"], "proposition-2.5");
    assert_eq!(parsed["seed"], 11);
}

#[test]
fn json_to_stdout_replaces_text() {
    let o = seqdual(&["norm", "lp:2", &seq(L2, "[[3, 4]]"), "--json", "-"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["value"], 5);
    assert_eq!(v["result"]["bound"], "exact");
}

#[test]
fn manifests_run_every_task() {
    let manifest = r#"{
      "version": 1,
      "spaces": { "E": { "dim": 2, "norm": { "p": 2 } } },
      "sequences": { "x": { "space": "E", "vectors": [[3, 4], [0, 0]] } },
      "operators": { "I": { "domain": "E", "codomain": "E", "matrix": [[1, 0], [0, 1]] } },
      "tasks": [
        { "name": "euclid", "kind": "norm", "class": "lp:2", "sequence": "x" },
        { "kind": "dualnorm", "class": "lp:1", "sequence": "x" },
        { "kind": "opnorm", "x": "lpw:2", "y": "lp:2", "operator": "I", "k": 2 },
        { "kind": "adjoint-report", "x": "lp:2", "y": "lp:2", "operator": "I", "k": 2 }
      ]
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    fs::write(&path, manifest).unwrap();
    let o = seqdual(&["report", path.to_str().unwrap(), "--json", "-"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let tasks = v["tasks"].as_array().unwrap();
    assert_eq!(tasks.len(), 4);
    assert_eq!(tasks[0]["name"], "euclid");
    assert_eq!(tasks[0]["result"]["value"], 5);
    assert_eq!(tasks[1]["class"], "dual(lp:1)");
    assert_eq!(tasks[1]["result"]["value"], 5);
    let pi = tasks[2]["result"]["value"].as_f64().unwrap();
    assert!((pi - 2f64.sqrt()).abs() < 1e-3);
    assert_eq!(tasks[3]["report"]["pass"], true);
}

#[test]
fn manifest_errors_carry_paths() {
    let o = seqdual(&[
        "report",
        r#"{"version": 1, "tasks": [{"kind": "norm", "class": "lp:2", "sequence": "nope"}]}"#,
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("$.tasks[0].sequence"), "{}", stderr(&o));
}

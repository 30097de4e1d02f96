use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use leafcut::Labeling;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn leafcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leafcut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8")
}

#[test]
fn analyze_fig1_matches_fixture() {
    let out = leafcut(&[
        "analyze",
        fixture("fig1.edges").to_str().unwrap(),
        "--mode",
        "simultaneous",
    ]);
    assert!(out.status.success());
    let got: Labeling = serde_json::from_str(&stdout(&out)).expect("valid labeling JSON");
    let expected: Labeling =
        serde_json::from_str(&std::fs::read_to_string(fixture("fig1_labels.json")).unwrap())
            .unwrap();
    assert_eq!(got, expected);
}

#[test]
fn analyze_fig2_matches_fixture() {
    let out = leafcut(&[
        "analyze",
        fixture("fig2.edges").to_str().unwrap(),
        "--mode",
        "alternating",
        "--starter",
        "a",
        "--a",
        "w1",
    ]);
    assert!(out.status.success());
    let got: Labeling = serde_json::from_str(&stdout(&out)).expect("valid labeling JSON");
    let expected: Labeling =
        serde_json::from_str(&std::fs::read_to_string(fixture("fig2_labels.json")).unwrap())
            .unwrap();
    assert_eq!(got, expected);
}

#[test]
fn identical_inputs_identical_bytes() {
    let path = fixture("fig1.edges");
    let args = ["analyze", path.to_str().unwrap(), "--format", "json"];
    let first = leafcut(&args);
    let second = leafcut(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn simulate_triangle_is_never() {
    let out = leafcut(&[
        "simulate",
        fixture("triangle.edges").to_str().unwrap(),
        "--a",
        "x",
        "--b",
        "y",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"outcome":{"kind":"never"}}"#);
}

#[test]
fn simulate_trace_is_jsonl() {
    let out = leafcut(&[
        "simulate",
        fixture("fig1.edges").to_str().unwrap(),
        "--a",
        "w8",
        "--b",
        "b5",
        "--trace",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5 + 1, "five steps plus the outcome record");
    for line in &lines {
        serde_json::from_str::<serde_json::Value>(line).expect("each line is JSON");
    }
    assert!(lines.last().unwrap().contains("both_at"));
}

#[test]
fn check_smoke_reports_zero_mismatches() {
    let out = leafcut(&["check", "--max-n", "5"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 mismatches"));
}

#[test]
fn analyze_output_revalidates_cleanly() {
    let out = leafcut(&["analyze", fixture("fig1.edges").to_str().unwrap()]);
    assert!(out.status.success());
    let dir = tempfile::tempdir().unwrap();
    let lab_path = dir.path().join("fig1_out.json");
    std::fs::write(&lab_path, out.stdout).unwrap();
    let check = leafcut(&[
        "check",
        fixture("fig1.edges").to_str().unwrap(),
        "--labeling",
        lab_path.to_str().unwrap(),
    ]);
    assert!(check.status.success());
    assert!(stdout(&check).contains("0 violations"));
}

#[test]
fn tampered_labeling_is_flagged() {
    let out = leafcut(&["analyze", fixture("fig1.edges").to_str().unwrap()]);
    let tampered = stdout(&out).replace(
        r#"{"edge":["b5","w8"],"direction":"both","label":5}"#,
        r#"{"edge":["b5","w8"],"direction":"both","label":4}"#,
    );
    assert!(tampered.contains("\"label\":4"));
    let dir = tempfile::tempdir().unwrap();
    let lab_path = dir.path().join("tampered.json");
    std::fs::write(&lab_path, tampered).unwrap();
    let check = leafcut(&[
        "check",
        fixture("fig1.edges").to_str().unwrap(),
        "--labeling",
        lab_path.to_str().unwrap(),
    ]);
    assert_eq!(check.status.code(), Some(1));
    assert!(stdout(&check).contains("not strictly increasing"));
}

#[test]
fn reduce_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("split.edges");
    let out = leafcut(&[
        "reduce",
        fixture("fig5a.edges").to_str().unwrap(),
        "--a",
        "A",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let payload: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(payload["zigzag_forest"], serde_json::json!(true));
    assert_eq!(payload["origin"]["u.in"], serde_json::json!("u"));
    let edge_list = std::fs::read_to_string(&out_path).unwrap();
    assert!(edge_list.contains("u.out > B"));
    let sidecar = std::fs::read_to_string(dir.path().join("split.edges.origin.json")).unwrap();
    let origin: serde_json::Value = serde_json::from_str(&sidecar).unwrap();
    assert_eq!(origin["v.out"], serde_json::json!("v"));
}

#[test]
fn strategy_emits_labeling_and_playbook() {
    let out = leafcut(&["strategy", fixture("fig1.edges").to_str().unwrap()]);
    assert!(out.status.success());
    let payload: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(payload["labeling"].as_array().unwrap().len() >= 21);
    assert!(payload["playbook"]["a"].as_object().unwrap().len() == 22);
}

#[test]
fn strategy_accepts_explicit_phi() {
    let g = leafcut::GameGraph::parse(&std::fs::read_to_string(fixture("fig1.edges")).unwrap())
        .unwrap();
    // Reverse of the lexicographic bijection.
    let e = g.edge_count() as u32;
    let phi_text: String = g
        .edges()
        .enumerate()
        .map(|(i, (u, v))| format!("{u} {v} {}\n", e - 1 - i as u32))
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let phi_path = dir.path().join("phi.txt");
    std::fs::write(&phi_path, phi_text).unwrap();
    let out = leafcut(&[
        "strategy",
        fixture("fig1.edges").to_str().unwrap(),
        "--phi",
        phi_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
}

#[test]
fn dot_export_has_arrowheads() {
    let out = leafcut(&[
        "analyze",
        fixture("fig1.edges").to_str().unwrap(),
        "--format",
        "dot",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("\"w5\" -> \"b2\" [label=1];"));
    assert!(text.contains("dir=both"));
}

#[test]
fn exit_code_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.edges");
    std::fs::write(&bad, "a b c d\n").unwrap();
    let out = leafcut(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_mixed_edge_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("mixed.edges");
    std::fs::write(&bad, "a b\nc > d\n").unwrap();
    let out = leafcut(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_invalid_placement() {
    let out = leafcut(&[
        "simulate",
        fixture("fig1.edges").to_str().unwrap(),
        "--a",
        "w1",
        "--b",
        "w2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let unknown = leafcut(&[
        "predict",
        fixture("fig1.edges").to_str().unwrap(),
        "--a",
        "w1",
        "--b",
        "nope",
    ]);
    assert_eq!(unknown.status.code(), Some(3));
}

#[test]
fn exit_code_tree_precondition() {
    let out = leafcut(&["analyze", fixture("triangle.edges").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("not a tree"));
}

#[test]
fn alternating_requires_starter_and_anchor() {
    let no_starter = leafcut(&[
        "analyze",
        fixture("fig1.edges").to_str().unwrap(),
        "--mode",
        "alternating",
    ]);
    assert_eq!(no_starter.status.code(), Some(2));
    let no_anchor = leafcut(&[
        "analyze",
        fixture("fig1.edges").to_str().unwrap(),
        "--mode",
        "alternating",
        "--starter",
        "a",
    ]);
    assert_eq!(no_anchor.status.code(), Some(2));
}

//! End-to-end tests against the compiled binary: report text, JSON shape
//! and determinism, exit codes, SVG output, and the corpus runner.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_polybound"));
    // isolate from the caller's environment
    c.env_remove("POLYBOUND_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn analyze_text_cites_the_criterion_labels() {
    let out = run(&["analyze", "--field", "Q", "6+5x+x^2+(5+2x)y+y^2"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("T1F (Theorem 1(i)): bound 2"), "{text}");
    assert!(text.contains("T2F (Theorem 2(i)): inapplicable"), "{text}");
    assert!(text.contains("best bound: 2"), "{text}");
}

#[test]
fn analyze_json_is_byte_identical_across_runs() {
    let args = ["analyze", "--field", "Q", "--json", "6+5x+x^2+(5+2x)y+y^2"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "JSON output must be deterministic");

    let report: serde_json::Value = serde_json::from_slice(&first.stdout).expect("valid JSON");
    assert_eq!(report["best_bound"], 2);
    assert_eq!(report["field"], "Q");
    let verdicts = report["verdicts"].as_array().expect("verdict list");
    assert_eq!(verdicts.len(), 10);
    assert!(verdicts
        .iter()
        .any(|v| v["id"] == "T1F" && v["status"] == "Applicable" && v["bound"] == 2));
}

#[test]
fn no_applicable_criterion_still_exits_zero() {
    let out = run(&["analyze", "--field", "Q", "1+y+y^2"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("best bound: none"));
}

#[test]
fn certificates_appear_in_the_text_report() {
    let out = run(&["analyze", "1 + x^4 + x^3 y + y^2"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("irreducible: certified by C2F (Corollary 1)"));
}

#[test]
fn parse_errors_point_at_the_offending_span() {
    let out = run(&["analyze", "--field", "Q", "1+&y"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.contains('^'), "{err}");
    assert!(err.contains("1+&y"), "{err}");
}

#[test]
fn newton_reports_vertices_and_writes_deterministic_svg() {
    let dir = tempfile::tempdir().expect("tempdir");
    let svg_a = dir.path().join("a.svg");
    let svg_b = dir.path().join("b.svg");

    let out = run(&["newton", "1+x*y+y^3", "--svg", svg_a.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("vertices: (0, 0) (1, -1) (3, 0)"), "{text}");
    assert!(text.contains("1 inside, 0 on, 2 outside"), "{text}");

    let again = run(&["newton", "1+x*y+y^3", "--svg", svg_b.to_str().unwrap()]);
    assert!(again.status.success());
    let a = std::fs::read(&svg_a).expect("svg written");
    let b = std::fs::read(&svg_b).expect("svg written");
    assert!(a.starts_with(b"<svg"), "svg starts with the root element");
    assert_eq!(a, b, "svg output must be deterministic");
}

#[test]
fn newton_json_has_the_polygon_shape() {
    let out = run(&["newton", "--json", "1+x*y+y^3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["vertices"], serde_json::json!([[0, 0], [1, -1], [3, 0]]));
    assert_eq!(v["root_location"]["inside"], 1);
    assert_eq!(v["root_location"]["outside"], 2);
}

#[test]
fn ufactor_reports_multiplicities_and_smallest_degree() {
    let out = run(&["ufactor", "--field", "Q", "(2 + x^2)^4"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("factors: (2 + x^2)^4"), "{text}");
    assert!(text.contains("nu: 4"), "{text}");
    assert!(text.contains("smallest irreducible degree: 2"), "{text}");
}

#[test]
fn ufactor_degree_cap_maps_to_exit_2() {
    let out = run(&["ufactor", "--field", "Q", "x^25 + 2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("cap"), "{}", stderr_of(&out));
}

#[test]
fn oracle_requires_a_prime_field() {
    let out = run(&["oracle", "--field", "Q", "1 + y"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_factors_over_f3() {
    let out = run(&["oracle", "--field", "F3", "(1 + x y + y^2)^2"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("factors: (1 + x*y + y^2)^2"), "{text}");
    assert!(text.contains("count: 2"), "{text}");
}

#[test]
fn oracle_budget_is_enforced_and_env_adjustable() {
    let capped = run(&["oracle", "--field", "F2", "1 + x y + y^7"]);
    assert_eq!(capped.status.code(), Some(2));

    let raised = bin()
        .env("POLYBOUND_BUDGET", "7,8,4")
        .args(["oracle", "--field", "F2", "1 + x y + y^7"])
        .output()
        .expect("binary runs");
    assert!(raised.status.success(), "{}", stderr_of(&raised));
    assert!(stdout_of(&raised).contains("count:"));

    let garbled = bin()
        .env("POLYBOUND_BUDGET", "a lot")
        .args(["oracle", "--field", "F2", "1 + y^2"])
        .output()
        .expect("binary runs");
    assert_eq!(garbled.status.code(), Some(1));
}

fn shipped_corpus() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus/regression.corpus")
        .to_str()
        .expect("utf8 path")
        .to_string()
}

#[test]
fn shipped_corpus_passes_with_seeded_sweep() {
    let out = run(&["corpus", &shipped_corpus(), "--seed", "42"]);
    assert!(out.status.success(), "{}", stdout_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains(" 0 failed"), "{text}");
    assert!(text.contains("zero violations"), "{text}");
}

#[test]
fn corpus_mismatch_prints_a_diff_and_fails() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("bad.corpus");
    std::fs::write(&path, "1 + x y + y^2 ; {\"best_bound\": 7}\n").expect("write corpus");
    let out = run(&["corpus", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("MISMATCH"), "{text}");
    assert!(text.contains("expected fragment"), "{text}");
    assert!(text.contains("actual report"), "{text}");
}

#[test]
fn empty_corpus_passes_with_zero_cases() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("empty.corpus");
    std::fs::write(&path, "# nothing here\n\n").expect("write corpus");
    let out = run(&["corpus", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("0 passed, 0 failed"));
}

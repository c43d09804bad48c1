//! End-to-end tests of the `qmat` binary: output shapes, JSON round-trips,
//! and the exit-code contract (0 ok, 1 failed verification, 2 bad input).

use std::path::Path;
use std::process::{Command, Output};

use qmat::document::{document_to_pbw, read_document, write_document, ElementDocument};

fn qmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        stdout(out),
        stderr(out)
    );
}

fn write_temp(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn primitivity_plain_and_json() {
    let out = qmat(&["primitivity", "--m", "2", "--n", "3"]);
    assert_exit(&out, 0);
    assert_eq!(stdout(&out).trim(), "primitive: true");

    let out = qmat(&["primitivity", "--m", "2", "--n", "2", "--json"]);
    assert_exit(&out, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["primitive"], serde_json::Value::Bool(false));
    assert_eq!(report["alpha"], serde_json::json!(2));
    assert_eq!(report["methods_agree"], serde_json::Value::Bool(true));

    let out = qmat(&["primitivity", "--m", "2", "--n", "3", "--method", "sorcery"]);
    assert_exit(&out, 2);
    let out = qmat(&["primitivity", "--m", "0", "--n", "3"]);
    assert_exit(&out, 2);
}

#[test]
fn stratum_dim_prints_the_number() {
    let out = qmat(&["stratum-dim", "--m", "2", "--n", "2"]);
    assert_exit(&out, 0);
    assert_eq!(stdout(&out).trim(), "2");
    let out = qmat(&["stratum-dim", "--m", "2", "--n", "3"]);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn b_gens_listing() {
    let out = qmat(&["b-gens", "--m", "2", "--n", "3"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("b_1: rows [1], cols [3]"));
    assert!(text.contains("catalog: complete"));

    let out = qmat(&["b-gens", "--m", "2", "--n", "2", "--expand", "--json"]);
    assert_exit(&out, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["complete"], serde_json::Value::Bool(false));
    assert_eq!(v["generators"].as_array().unwrap().len(), 3);
    assert!(v["generators"][1]["element"]["terms"].is_array());
}

#[test]
fn minor_emits_canonical_documents() {
    let out = qmat(&["minor", "--m", "2", "--n", "2", "--rows", "1,2", "--cols", "1,2"]);
    assert_exit(&out, 0);
    let doc = read_document(&stdout(&out)).unwrap();
    assert_eq!(doc.kind, "pbw");
    assert_eq!(doc.terms.len(), 2);
    // Canonical emission is bit-stable.
    assert_eq!(write_document(&doc), stdout(&out));

    let out = qmat(&["minor", "--m", "2", "--n", "2", "--rows", "2,1", "--cols", "1,2"]);
    assert_exit(&out, 2);
    let out = qmat(&["minor", "--m", "2", "--n", "2", "--rows", "1,x", "--cols", "1,2"]);
    assert_exit(&out, 2);
}

#[test]
fn mul_round_trips_documents() {
    let dir = tempfile::tempdir().unwrap();
    let det = qmat(&["minor", "--m", "2", "--n", "2", "--rows", "1,2", "--cols", "1,2"]);
    let y12 = qmat(&["minor", "--m", "2", "--n", "2", "--rows", "1", "--cols", "2"]);
    let lhs = write_temp(dir.path(), "det.json", &stdout(&det));
    let rhs = write_temp(dir.path(), "y12.json", &stdout(&y12));

    let out = qmat(&["mul", "--lhs", &lhs, "--rhs", &rhs]);
    assert_exit(&out, 0);
    let product = document_to_pbw(&read_document(&stdout(&out)).unwrap()).unwrap();
    // The determinant is central, so the reverse product is identical.
    let reverse = qmat(&["mul", "--lhs", &rhs, "--rhs", &lhs]);
    let product_rev = document_to_pbw(&read_document(&stdout(&reverse)).unwrap()).unwrap();
    assert_eq!(product, product_rev);

    let torus_doc = ElementDocument {
        kind: "torus".into(),
        m: 2,
        n: 2,
        terms: vec![],
    };
    let torus_path = write_temp(
        dir.path(),
        "torus.json",
        &serde_json::to_string(&torus_doc).unwrap(),
    );
    let out = qmat(&["mul", "--lhs", &lhs, "--rhs", &torus_path]);
    assert_exit(&out, 2);
    let out = qmat(&["mul", "--lhs", &lhs, "--rhs", "/nonexistent.json"]);
    assert_exit(&out, 2);
    let garbled = write_temp(dir.path(), "bad.json", "{ nope");
    let out = qmat(&["mul", "--lhs", &lhs, "--rhs", &garbled]);
    assert_exit(&out, 2);
}

#[test]
fn normal_check_ratios_and_failure() {
    let dir = tempfile::tempdir().unwrap();
    let det = qmat(&["minor", "--m", "2", "--n", "2", "--rows", "1,2", "--cols", "1,2"]);
    let central = write_temp(dir.path(), "det.json", &stdout(&det));
    let out = qmat(&["normal-check", "--in", &central]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    for line in ["Y[1,1]: 1", "Y[1,2]: 1", "Y[2,1]: 1", "Y[2,2]: 1"] {
        assert!(text.contains(line), "missing {line:?} in {text}");
    }

    // Y[1,1] + Y[2,2] is not q-normal: exit 1.
    let bad = ElementDocument {
        kind: "pbw".into(),
        m: 2,
        n: 2,
        terms: vec![
            qmat::document::TermDocument {
                exp: vec![1, 0, 0, 0],
                coef: vec![(0, "1".into())],
            },
            qmat::document::TermDocument {
                exp: vec![0, 0, 0, 1],
                coef: vec![(0, "1".into())],
            },
        ],
    };
    let bad_path = write_temp(dir.path(), "bad.json", &write_document(&bad));
    let out = qmat(&["normal-check", "--in", &bad_path]);
    assert_exit(&out, 1);
    assert!(stderr(&out).contains("not q-normal"));
}

#[test]
fn restore_verifies_and_emits_torus_documents() {
    let out = qmat(&["restore", "--m", "2", "--n", "2", "--verify"]);
    assert_exit(&out, 0);
    assert!(stderr(&out).contains("embedding relations: ok"));
    assert!(stderr(&out).contains("staircase monomials: ok"));
    let docs: Vec<ElementDocument> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(docs.len(), 4);
    assert!(docs.iter().all(|d| d.kind == "torus"));
    // The corner entry has the extra correction term.
    assert_eq!(docs[0].terms.len(), 2);

    let out = qmat(&["restore", "--m", "0", "--n", "2"]);
    assert_exit(&out, 2);
}

#[test]
fn center_reports_vectors() {
    let out = qmat(&["center", "--m", "2", "--n", "2"]);
    assert_exit(&out, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dim"], serde_json::json!(2));
    assert_eq!(v["vectors"].as_array().unwrap().len(), 2);
    assert_eq!(v["certified"], serde_json::Value::Bool(true));

    let out = qmat(&["center", "--m", "2", "--n", "3"]);
    assert_exit(&out, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dim"], serde_json::json!(0));
}

#[test]
fn hprime_builds_and_rejects() {
    let out = qmat(&["hprime", "--m", "1", "--n", "3", "--poly", "X1 + 1"]);
    assert_exit(&out, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["element"]["kind"], serde_json::json!("pbw"));
    assert_eq!(v["ratios"].as_array().unwrap().len(), 3);

    // Divisible by a variable: precondition violation.
    let out = qmat(&["hprime", "--m", "1", "--n", "3", "--poly", "X1"]);
    assert_exit(&out, 2);
    // Valuation mismatch.
    let out = qmat(&["hprime", "--m", "2", "--n", "3", "--poly", "X1 + 1"]);
    assert_exit(&out, 2);
    // Parse error carries a byte position.
    let out = qmat(&["hprime", "--m", "1", "--n", "3", "--poly", "X1 + @"]);
    assert_exit(&out, 2);
    assert!(stderr(&out).contains("byte 5"));
}

#[test]
fn verify_full_suite_passes_at_size_twelve() {
    let out = qmat(&["verify", "--suite", "all", "--max-size", "12"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("0 failed"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");

    let out = qmat(&["verify", "--suite", "nonsense", "--max-size", "4"]);
    assert_exit(&out, 2);
    let out = qmat(&["verify", "--suite", "all", "--max-size", "0"]);
    assert_exit(&out, 2);
}

#[test]
fn missing_flags_exit_two() {
    let out = qmat(&["primitivity", "--m", "2"]);
    assert_exit(&out, 2);
    let out = qmat(&["no-such-command"]);
    assert_exit(&out, 2);
}

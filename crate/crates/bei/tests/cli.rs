//! End-to-end tests of the `bei` binary: exit-code contract, JSON output
//! schemas against golden files, and input validation.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn bei(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bei"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn graph_file(json: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn golden(name: &str) -> Value {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

const SUBDIVIDED_STAR: &str =
    r#"{"n": 9, "edges": [[1,2],[1,3],[1,4],[1,5],[1,6],[2,7],[3,8],[4,9]]}"#;
const STAR3: &str = r#"{"n": 4, "edges": [[1,2],[1,3],[1,4]]}"#;
const PATH3: &str = r#"{"n": 3, "edges": [[1,2],[2,3]]}"#;
const PATH4: &str = r#"{"n": 4, "edges": [[1,2],[2,3],[3,4]]}"#;
const SPIDER7: &str = r#"{"n": 7, "edges": [[1,2],[1,3],[1,4],[4,5],[5,6],[5,7]]}"#;
const TRIANGLE: &str = r#"{"n": 3, "edges": [[1,2],[1,3],[2,3]]}"#;

#[test]
fn classify_matches_golden() {
    let f = graph_file(SUBDIVIDED_STAR);
    let out = bei(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), golden("classify_subdivided_star.json"));
}

#[test]
fn classify_exit_codes() {
    // parse error
    let f = graph_file("{not json");
    assert_eq!(bei(&["classify", f.path().to_str().unwrap()]).status.code(), Some(2));
    let missing = bei(&["classify", "/nonexistent/graph.json"]);
    assert_eq!(missing.status.code(), Some(2));
    // precondition: not a tree
    let f = graph_file(TRIANGLE);
    assert_eq!(bei(&["classify", f.path().to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn dseq_canonical_matches_golden() {
    let f = graph_file(STAR3);
    let out = bei(&["dseq", f.path().to_str().unwrap(), "--order", "canonical"]);
    assert_eq!(out.status.code(), Some(0));
    let mut v = stdout_json(&out);
    // volatile counters are checked for presence, then dropped
    let obj = v.as_object_mut().unwrap();
    assert!(obj.remove("buchberger_runs").unwrap().is_u64());
    assert!(obj.remove("searched").unwrap().is_u64());
    assert_eq!(v, golden("dseq_star_canonical.json"));
}

#[test]
fn dseq_search_negative_is_exit_1() {
    let f = graph_file(SPIDER7);
    let out = bei(&["dseq", f.path().to_str().unwrap(), "--order", "search", "--field", "fp"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["holds"], false);
    assert_eq!(v["exhaustive"], true);
}

#[test]
fn dseq_tiny_budget_is_inconclusive() {
    let f = graph_file(SPIDER7);
    let out = bei(&[
        "dseq", f.path().to_str().unwrap(), "--order", "search", "--field", "fp",
        "--budget", "2",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let v = stdout_json(&out);
    assert_eq!(v["exhaustive"], false);
}

#[test]
fn dseq_explicit_order() {
    let f = graph_file(PATH4);
    // a reversed path ordering still forms a d-sequence
    let out = bei(&[
        "dseq", f.path().to_str().unwrap(), "--order", "explicit", "--edges", "3-4,2-3,1-2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    // explicit without --edges is a precondition failure
    let out = bei(&["dseq", f.path().to_str().unwrap(), "--order", "explicit"]);
    assert_eq!(out.status.code(), Some(3));
    // a non-edge in the list is a precondition failure
    let out = bei(&[
        "dseq", f.path().to_str().unwrap(), "--order", "explicit", "--edges", "1-4,2-3,1-2",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reg_check_matches_golden() {
    let f = graph_file(PATH3);
    let out = bei(&["reg", f.path().to_str().unwrap(), "--check", "--field", "fp"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), golden("reg_path3_check.json"));
}

#[test]
fn reg_predict_only() {
    let f = graph_file(STAR3);
    let out = bei(&["reg", f.path().to_str().unwrap(), "--power", "3", "--predict-only"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["predicted"], 6);
    assert_eq!(v["rule"], "StarPower");
    // no closed form for the 7-vertex spider at powers
    let f = graph_file(SPIDER7);
    let out = bei(&["reg", f.path().to_str().unwrap(), "--power", "2", "--predict-only"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reg_compute_works_without_a_rule() {
    // compute does not require a prediction rule
    let f = graph_file(SPIDER7);
    let out = bei(&["reg", f.path().to_str().unwrap(), "--compute", "--field", "fp"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["reg"], 4); // 3 internal vertices + 1
    assert_eq!(v["certified"], true);
}

#[test]
fn table_format_renders() {
    let f = graph_file(PATH3);
    let out = bei(&["reg", f.path().to_str().unwrap(), "--compute", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("total:"));
    assert!(text.contains("reg:       2"));
}

#[test]
fn sweep_writes_jsonl_and_enforces_caps() {
    let out = bei(&["sweep", "--max-n", "4", "--mode", "dseq", "--field", "fp"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    // one record per unlabeled tree on 2..=4 vertices, plus the summary
    assert_eq!(lines.len(), 4 + 1);
    assert_eq!(lines.last().unwrap()["summary"]["mismatches"], 0);
    // size caps are preconditions
    let out = bei(&["sweep", "--max-n", "8", "--mode", "dseq"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn product_exit_codes() {
    let out = bei(&["product", "--paths", "1", "--m", "2", "--field", "fp"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["match"], true);
    // hypotheses violations are preconditions
    assert_eq!(bei(&["product", "--paths", "1", "--m", "1"]).status.code(), Some(3));
    assert_eq!(bei(&["product", "--paths", "1@1,1@1", "--m", "3"]).status.code(), Some(3));
    // malformed path spec is a parse error
    assert_eq!(bei(&["product", "--paths", "x", "--m", "2"]).status.code(), Some(2));
}

#[test]
fn field_flag_validation() {
    let f = graph_file(PATH3);
    let out = bei(&["reg", f.path().to_str().unwrap(), "--compute", "--field", "fp:4"]);
    assert_ne!(out.status.code(), Some(0)); // 4 is not prime
    let out = bei(&["reg", f.path().to_str().unwrap(), "--compute", "--field", "fp:101"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["field"], "Fp:101");
}

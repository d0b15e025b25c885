use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn folres() -> Command {
    Command::new(env!("CARGO_BIN_EXE_folres"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(scenario: &Path, extra: &[&str]) -> Output {
    folres().arg("run").arg(scenario).args(extra).output().unwrap()
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn dot_counts(path: &Path) -> (usize, usize) {
    let text = std::fs::read_to_string(path).unwrap();
    let edges = text.lines().filter(|l| l.contains(" -> ")).count();
    let nodes = text.lines().filter(|l| l.contains("[label=") && !l.contains(" -> ")).count();
    (nodes, edges)
}

const SURFACE: &str = r#"{"p": 5, "variables": ["x", "y"], "generators": [["x", "3*y"]], "driver": "surface"}"#;

#[test]
fn surface_scenario_resolves() {
    let dir = TempDir::new().unwrap();
    let sc = write(&dir, "s.json", SURFACE);
    let out_json = dir.path().join("out.json");
    let out_dot = dir.path().join("out.dot");
    let out = run(&sc, &["--report", out_json.to_str().unwrap(), "--dot", out_dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rep = report(&out_json);
    assert_eq!(rep["outcome"], "resolved");
    assert_eq!(rep["exit_code"], 0);
    assert_eq!(rep["resolution"]["depth"], 1);
    assert_eq!(rep["resolution"]["steps"][0]["weights"], serde_json::json!([1, 3]));
    assert!(rep["resolution"]["steps"][0]["evidence"]["certificate"].is_object());
    assert_eq!(dot_counts(&out_dot), (3, 2));
}

#[test]
fn report_goes_to_stdout_without_flag() {
    let dir = TempDir::new().unwrap();
    let sc = write(&dir, "s.json", SURFACE);
    let out = run(&sc, &[]);
    assert_eq!(out.status.code(), Some(0));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["driver"], "surface");
    assert_eq!(rep["scenario"]["p"], 5);
}

#[test]
fn trivial_input_has_one_node() {
    let dir = TempDir::new().unwrap();
    let sc = write(&dir, "s.json", &SURFACE.replace("[\"x\", \"3*y\"]", "[\"1\", \"x\"]"));
    let out_dot = dir.path().join("t.dot");
    let out = run(&sc, &["--dot", out_dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(dot_counts(&out_dot), (1, 0));
}

#[test]
fn threefold_tree_has_depth_two() {
    let dir = TempDir::new().unwrap();
    let sc = write(
        &dir,
        "t.json",
        r#"{"p": 5, "variables": ["x", "y", "z"], "generators": [["x", "3*y", "0"], ["x", "0", "4*z"]], "driver": "threefold_corank1"}"#,
    );
    let out_json = dir.path().join("out.json");
    let out_dot = dir.path().join("out.dot");
    let out = run(&sc, &["--report", out_json.to_str().unwrap(), "--dot", out_dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out_json);
    assert_eq!(rep["resolution"]["depth"], 2);
    let (nodes, edges) = dot_counts(&out_dot);
    assert_eq!(nodes, edges + 1);
    assert!(nodes > 4);
}

#[test]
fn char2_hypersurface_scenario() {
    let dir = TempDir::new().unwrap();
    let sc = write(
        &dir,
        "c.json",
        r#"{"p": 2, "variables": ["u", "v", "w", "t"], "generators": [["0", "0", "0", "t"]], "relations": ["t^2 - u*v"], "driver": "char2"}"#,
    );
    let out = run(&sc, &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn rees_counterexample_is_false() {
    let dir = TempDir::new().unwrap();
    let sc = write(
        &dir,
        "r.json",
        r#"{"p": 5, "variables": ["x", "y"], "driver": "rees_functoriality_check",
            "options": {"degree_bound": 3,
                        "left": [{"generator": "x", "weight": 1}, {"generator": "y", "weight": 3}],
                        "right": [{"generator": "y", "weight": 1}, {"generator": "x", "weight": 2}]}}"#,
    );
    let out = run(&sc, &[]);
    assert_eq!(out.status.code(), Some(1));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["outcome"], "false");
}

#[test]
fn rees_functoriality_holds() {
    let dir = TempDir::new().unwrap();
    let sc = write(
        &dir,
        "r.json",
        r#"{"p": 5, "variables": ["x", "y"], "driver": "rees_functoriality_check", "options": {"lambda": 3, "f": "1", "g": "1"}}"#,
    );
    let out = run(&sc, &["--degree-bound", "10"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn oracle_scenarios() {
    let dir = TempDir::new().unwrap();
    let euclid = write(&dir, "e.json", r#"{"p": 7, "variables": ["x", "y"], "driver": "euclid_root", "options": {"exponents_ab": [4, 9]}}"#);
    assert_eq!(run(&euclid, &[]).status.code(), Some(0));
    let consts = write(&dir, "c.json", r#"{"p": 2, "variables": ["x", "y"], "generators": [["1", "0"]], "driver": "constants_basis"}"#);
    let out = run(&consts, &["--degree-bound", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["result"]["dimension"], 6);
    let inv = write(
        &dir,
        "i.json",
        r#"{"p": 5, "variables": ["x1", "x2", "x3"], "driver": "inv_subring_check", "options": {"subset": [0, 1], "exponents": [2, 3], "pivot": 0}}"#,
    );
    assert_eq!(run(&inv, &[]).status.code(), Some(0));
    let bad_exp = write(
        &dir,
        "b.json",
        r#"{"p": 5, "variables": ["x1", "x2"], "driver": "inv_subring_check", "options": {"subset": [0, 1], "exponents": [5, 1]}}"#,
    );
    assert_eq!(run(&bad_exp, &[]).status.code(), Some(1));
    let lam = write(
        &dir,
        "l.json",
        r#"{"p": 5, "variables": ["x", "y", "z"], "generators": [["0", "0", "1"], ["x", "3*y", "0"]],
            "driver": "lambda_constancy_check", "options": {"points": [[0, 0, 0], [0, 0, 1], [0, 0, 4]]}}"#,
    );
    assert_eq!(run(&lam, &[]).status.code(), Some(0));
    let cls = write(&dir, "k.json", r#"{"p": 3, "variables": ["x", "y"], "generators": [["x", "x + y"]], "driver": "classify"}"#);
    assert_eq!(run(&cls, &[]).status.code(), Some(1));
}

#[test]
fn aborted_runs_exit_one() {
    let dir = TempDir::new().unwrap();
    let sc = write(&dir, "a.json", &SURFACE.replace("[\"x\", \"3*y\"]", "[\"x\", \"x + y\"]").replace("5", "3"));
    let out = run(&sc, &[]);
    assert_eq!(out.status.code(), Some(1));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["outcome"], "aborted");
    let sc = write(&dir, "d.json", SURFACE);
    assert_eq!(run(&sc, &["--max-depth", "0"]).status.code(), Some(1));
}

#[test]
fn parse_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    for text in [
        SURFACE.replace("3*y", "3*y +"),
        SURFACE.replace("3*y", "3*w"),
        SURFACE.replace("\"p\": 5", "\"p\": 9"),
        "{ not json".to_string(),
        SURFACE.replace("driver", "drivr"),
    ] {
        let sc = write(&dir, "bad.json", &text);
        let out = run(&sc, &[]);
        assert_eq!(out.status.code(), Some(2), "{text}");
    }
    let out = folres().args(["run", "/nonexistent/scenario.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = folres().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn relation_not_preserved_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let sc = write(
        &dir,
        "q.json",
        r#"{"p": 2, "variables": ["u", "v", "t"], "generators": [["1", "0", "0"]], "relations": ["t^2 - u*v"], "driver": "char2"}"#,
    );
    assert_eq!(run(&sc, &[]).status.code(), Some(2));
}

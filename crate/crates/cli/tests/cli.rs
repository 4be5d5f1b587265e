use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

struct Run {
    args: Vec<String>,
    stdin: Option<String>,
}

fn chibound() -> Run {
    Run { args: Vec::new(), stdin: None }
}

impl Run {
    fn args(mut self, args: impl IntoIterator<Item = impl AsRef<str>>) -> Self {
        self.args.extend(args.into_iter().map(|a| a.as_ref().to_string()));
        self
    }

    fn write_stdin(mut self, s: &str) -> Self {
        self.stdin = Some(s.to_string());
        self
    }

    fn output(self) -> Output {
        let mut child = Command::new(env!("CARGO_BIN_EXE_chibound"))
            .args(&self.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .unwrap();
        let input = self.stdin.unwrap_or_default();
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
        child.wait_with_output().unwrap()
    }

    fn code(self, want: i32) -> Output {
        let args = self.args.join(" ");
        let out = self.output();
        assert_eq!(out.status.code(), Some(want), "chibound {args}: {}", String::from_utf8_lossy(&out.stderr));
        out
    }

    fn success(self) -> Output {
        self.code(0)
    }
}

/// A fresh scratch directory for one test.
fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(chibound().args(args).success().stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn shift_graph_invariants() {
    let dir = scratch("shift_graph_invariants");
    let path = dir.join("g.txt");
    let p = path.to_str().unwrap();
    chibound().args(["construct", "shift", "9", "--out", p]).success();
    let v = json(&["invariants", p]);
    assert_eq!(v["n"], 36);
    assert_eq!(v["chi"]["value"], 4);
    assert_eq!(v["omega"]["value"], 2);
    // (1,3) (3,4) (2,3) (3,5) is a 4-cycle
    assert_eq!(v["girth"], serde_json::json!({ "Finite": 4 }));
}

#[test]
fn graph6_round_trip_of_k5() {
    let dir = scratch("graph6_round_trip_of_k5");
    let path = dir.join("k5.g6");
    let p = path.to_str().unwrap();
    chibound().args(["construct", "multipartite", "1,1,1,1,1", "--out", p]).success();
    assert_eq!(fs::read_to_string(&path).unwrap().trim(), "D~{");
    let v = json(&["invariants", p, "--which", "omega,chi"]);
    assert_eq!(v["omega"]["value"], 5);
    assert_eq!(v["chi"]["value"], 5);
}

#[test]
fn malformed_input_reports_position() {
    let dir = scratch("malformed_input_reports_position");
    let path = dir.join("bad.txt");
    fs::write(&path, "3 x\n").unwrap();
    let out = chibound().args(["invariants", path.to_str().unwrap()]).code(2).stderr;
    let msg = String::from_utf8(out).unwrap();
    assert!(msg.contains("line 1"), "{msg}");
}

#[test]
fn recognize_expectation_sets_exit_code() {
    let dir = scratch("recognize_expectation_sets_exit_code");
    let path = dir.join("p.txt");
    fs::write(&path, "3 2\n0\n1\n2\n0 1\n1 2\n").unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["recognize", "cluster", p]);
    assert_eq!(v["holds"], false);
    assert_eq!(v["certificate"]["induced"], "P3");
    chibound().args(["recognize", "cluster", p, "--expect", "true"]).code(1);
    chibound().args(["recognize", "trivially-perfect", p, "--expect", "true"]).success();
}

#[test]
fn reads_graph_from_stdin() {
    let out = chibound()
        .args(["recognize", "triangle-free", "-"])
        .write_stdin("3 3\n0\n1\n2\n0 1\n1 2\n0 2\n")
        .success()
        .stdout;
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["holds"], false);
}

#[test]
fn decompositions_verify() {
    let dir = scratch("decompositions_verify");
    let g = dir.join("b.txt");
    let f = dir.join("f.txt");
    let (g, f) = (g.to_str().unwrap(), f.to_str().unwrap());
    chibound().args(["construct", "bipartite", "5", "6", "0.5", "--seed", "4", "--out", g]).success();
    assert_eq!(json(&["decompose", "line-bipartite", g])["report"]["holds"], true);
    chibound().args(["construct", "unit-interval", "15", "--family", "--seed", "4", "--out", f]).success();
    assert_eq!(json(&["decompose", "unit-interval", f])["report"]["holds"], true);
    chibound().args(["construct", "shift", "5", "--out", g]).success();
    chibound().args(["decompose", "line-bipartite", g]).code(2);
}

#[test]
fn bounds_output() {
    assert_eq!(stdout(&["bounds", "eval", "fr", "3", "--r", "1"]).trim(), "11");
    assert_eq!(stdout(&["bounds", "eval", "ramsey", "4", "--r", "3"]).trim(), "9");
    let table = stdout(&["bounds", "table", "--upto", "3"]);
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "n,identity,vizing,rk1-guard,fr,self-guard,ramsey");
    assert_eq!(lines.len(), 4);
    assert!(lines[2].starts_with("2,2,3,"));
}

#[test]
fn burling_tree_pipeline() {
    let dir = scratch("burling_tree_pipeline");
    let t = dir.join("t.txt");
    let t = t.to_str().unwrap();
    chibound().args(["burling", "random", "12", "--seed", "9", "--out", t]).success();
    let v = json(&["burling", "verify", t]);
    assert_eq!(v["valid"], true);
    assert_eq!(v["meet_equals_derived"], true);
    let g = stdout(&["burling", "derive", t, "--graph", "clique-closure"]);
    assert!(g.starts_with("12 "));
}

#[test]
fn experiment_reports_are_deterministic() {
    let run = |extra: &[&str]| {
        let mut args = vec!["experiment", "burling-verify", "-p", "trees=15", "--seed", "7"];
        args.extend_from_slice(extra);
        let mut v = json(&args);
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    let a = run(&[]);
    assert_eq!(a, run(&["--sequential"]));
    assert_eq!(a["schema"], 1);
    assert_eq!(a["summary"]["failed"], 0);
    assert_eq!(a["experiment"]["seed"], 7);
}

#[test]
fn experiment_errors() {
    let out = chibound().args(["experiment", "nope"]).code(2).stderr;
    assert!(String::from_utf8(out).unwrap().contains("shift-chi"));
    chibound().args(["experiment", "shift-chi", "-p", "wrong=1"]).code(2);
    let listed = stdout(&["experiment", "--list"]);
    assert_eq!(listed.lines().count(), 9);
}

#[test]
fn exhausted_budget_fails_with_partial_report() {
    let out = chibound()
        .args(["experiment", "shift-chi", "--budget-seconds", "0"])
        .code(1)
        .stdout;
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["complete"], false);
}

use std::process::{Command, Output};

use serde_json::Value;

fn dpic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpic")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn untimed(mut v: Value) -> Value {
    for c in v["checks"].as_array_mut().unwrap() {
        c["ms"] = Value::from(0);
    }
    v
}

#[test]
fn order_suite_reports_three() {
    let out = dpic(&["verify", "order", "--p", "3", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite"], "order");
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["checks"][0]["witness"]["order"], 3);
    for c in v["checks"].as_array().unwrap() {
        for key in ["claim", "citation", "status", "witness", "ms"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
    }
    assert_eq!(v["params"]["p"], 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dpic(&["verify", "weyl-relations", "--p", "2"]).status.code(), Some(2));
    assert_eq!(dpic(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(dpic(&["verify"]).status.code(), Some(2));
    assert_eq!(dpic(&["verify", "order", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(dpic(&["eval", "x1 +* x2"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let a = json(&dpic(&["verify", "dpic-axioms", "--seed", "7"]));
    let b = json(&dpic(&["verify", "dpic-axioms", "--seed", "7"]));
    assert_eq!(untimed(a.clone()), untimed(b));
    assert_eq!(a["verdict"], "pass");
    let seq = json(&dpic(&["verify", "dpic-axioms", "--seed", "7", "--sequential"]));
    assert_eq!(untimed(a), untimed(seq));
}

#[test]
fn writes_report_file_and_text() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = dpic(&["verify", "shift-laws", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "shift-laws");
    let text = dpic(&["verify", "order", "--format", "text"]);
    let s = String::from_utf8(text.stdout).unwrap();
    assert!(s.contains("PASS") && s.contains("verdict: pass"));
}

#[test]
fn opposite_suite_with_negative_parameters() {
    let out = dpic(&["verify", "lemma-tensor-square", "--c", "1", "--cprime", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["checks"][0]["status"], "skip");
}

#[test]
fn eval_prints_canonical_form() {
    let run = |e: &str| String::from_utf8(dpic(&["eval", e, "--p", "3", "--n", "1"]).stdout).unwrap();
    assert_eq!(run("x1*x2 - x2*x1 + 1").trim(), "0");
    assert_eq!(run("(x1 + x2)^3").trim(), "1*x1^3 + 1*x2^3");
    assert_eq!(run("x1^0").trim(), "1");
}

#[test]
fn lists_suites() {
    let s = String::from_utf8(dpic(&["suites"]).stdout).unwrap();
    assert_eq!(s.lines().count(), 10);
}

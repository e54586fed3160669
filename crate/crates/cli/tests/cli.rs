use std::path::PathBuf;
use std::process::{Command, Output};

use conproc::analysis::{Certificate, Verdict, VerdictResult};
use conproc::spectral::EigenVector;
use conproc::{ConvexProcess, Rat};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conproc")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn example_one_reach_json() {
    let s = stdout(&["analyze", &path("ex1.json"), "--check", "reach", "--format", "json"]);
    let v: Verdict = serde_json::from_str(&s).unwrap();
    assert_eq!(v.result, VerdictResult::Holds);
    assert!(v.assumptions.iter().all(|a| a.satisfied));
}

#[test]
fn hbar_text_reports() {
    let s = stdout(&["analyze", &path("hbar.json"), "--check", "null"]);
    assert!(s.contains("NULL_CONTROLLABILITY: HOLDS"), "{s}");
    assert!(s.contains("✓ R+ = R^n"));
    let s = stdout(&["analyze", &path("hbar.json"), "--check", "reach"]);
    assert!(s.contains("REACHABILITY: FAILS"), "{s}");
    assert!(s.contains("obstruction: lambda=0, xi=[-1]"), "{s}");
}

#[test]
fn json_report_round_trips() {
    let s = stdout(&["analyze", &path("hbar.json"), "--format", "json"]);
    let vs: Vec<Verdict> = serde_json::from_str(&s).unwrap();
    assert_eq!(vs.len(), 2);
    let again = serde_json::to_value(&vs).unwrap();
    assert_eq!(again, serde_json::from_str::<serde_json::Value>(&s).unwrap());
    match &vs[0].certificate {
        Some(Certificate::Eigenpair { xi: EigenVector::Rational(xi), .. }) => {
            assert_eq!(xi, &vec![Rat::from_int(-1)])
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["analyze", "F", "--format", "json", "--certificate"],
        vec!["info", "F", "--format", "json"],
        vec!["simulate", "F", "--x0", "-2", "--steps", "4", "--seed", "9"],
    ] {
        let p = path("hbar.json");
        let args: Vec<&str> = args.iter().map(|a| if *a == "F" { p.as_str() } else { a }).collect();
        assert_eq!(stdout(&args), stdout(&args));
    }
}

#[test]
fn oracle_saturation() {
    let s = stdout(&["oracle", &path("ex1.json"), "--dir", "reach", "--steps", "3"]);
    assert!(s.contains("saturated at l=1"), "{s}");
    let s = stdout(&["oracle", &path("ex1.json"), "--dir", "feasible", "--steps", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["cones"].as_array().unwrap().len(), 3);
    assert_eq!(v["dir"], "FEASIBLE");
}

#[test]
fn oracle_default_steps_follow_precedence() {
    let s = stdout(&["oracle", &path("ex1.json"), "--dir", "null", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["steps"], 4);
    let s = stdout(&["--max-steps", "2", "oracle", &path("ex1.json"), "--dir", "null", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["steps"], 2);
}

#[test]
fn dual_graph_matches_library() {
    let s = stdout(&["dual", &path("hbar.json"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["n"], 1);
    let g: conproc::ConeJson = serde_json::from_value(v["graph"].clone()).unwrap();
    let dual = ConvexProcess::from_graph(1, g.to_cone(2, "graph").unwrap()).unwrap();
    let (h, _) = conproc::io::parse_system(&data("hbar.json")).unwrap();
    assert_eq!(dual, h.dual(conproc::process::DualSign::Minus));
}

#[test]
fn info_lists_subspaces() {
    let s = stdout(&["info", &path("ex1.json")]);
    for key in ["dom H:", "im H:", "graph L-:", "graph L+:", "R- =", "R+ =", "N- ="] {
        assert!(s.contains(key), "{key} missing from {s}");
    }
}

#[test]
fn simulate_infeasible_start() {
    let s = stdout(&["simulate", &path("ex1.json"), "--x0", "-1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["status"], "INFEASIBLE");
    assert_eq!(v["step"], 0);
}

#[test]
fn irrational_obstruction_and_strict_mode() {
    let file = path("sqrt2_cone_input.json");
    let s = stdout(&["analyze", &file, "--check", "reach"]);
    assert!(s.contains("REACHABILITY: FAILS"), "{s}");
    assert!(s.contains("t^2 - 2"), "{s}");
    let out = run(&["analyze", &file, "--check", "reach", "--refine-depth", "0", "--strict"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("INDETERMINATE") && text.contains("root of t^2 - 2"), "{text}");
    let out = run(&["analyze", &file, "--check", "reach", "--refine-depth", "0"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", &path("ex1.json"), "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(run(&["simulate", &path("ex1.json"), "--x0", "1,2"]).status.code(), Some(1));

    let dir = std::env::temp_dir().join(format!("conproc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"system": {"A": [[1, 0], [0]]}}"#).unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("system.A[1]"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_documents_closure_restriction() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("closed"));
}

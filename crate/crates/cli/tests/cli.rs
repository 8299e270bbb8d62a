use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypertrans")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

const COLLINEAR: &str = r#"{"d":2,"k":1,
  "sets":[{"id":"A","vertices":[["0","0"]]},{"id":"B","vertices":[["1","1"]]},{"id":"C","vertices":[["2","2"]]}],
  "matroid":{"type":"uniform","rank":3},"phi":{"A":["0"],"B":["1"],"C":["2"]}}"#;

const VIOLATING: &str = r#"{"d":2,"k":1,
  "sets":[{"id":"A","vertices":[["0","0"]]},{"id":"B","vertices":[["9","9"]]},{"id":"C","vertices":[["1","0"]]}],
  "matroid":{"type":"uniform","rank":3},"phi":{"A":["0"],"B":["1"],"C":["2"]}}"#;

#[test]
fn solve_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.json", COLLINEAR);
    let out = run(&["solve", &f]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"], "witness");
    assert_eq!(v["g"], serde_json::json!(["A", "B", "C"]));
    assert_eq!(v["hyperplane"]["normal"], serde_json::json!(["1", "-1"]));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "v.json", VIOLATING);
    assert_eq!(run(&["check", &bad]).status.code(), Some(3));
    assert_eq!(run(&["solve", &bad]).status.code(), Some(3));
    let broken = write(dir.path(), "b.json", &COLLINEAR.replace("\"2\",\"2\"", "\"2\",\"1/0\""));
    let out = run(&["solve", &broken]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zero denominator at sets[2].vertices[0][1]"));
    assert_eq!(run(&["solve"]).status.code(), Some(2));
    assert_eq!(run(&["--max-family", "2", "check", &bad]).status.code(), Some(2));
}

#[test]
fn text_format_and_audit() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.json", COLLINEAR);
    let out = run(&["--format", "text", "check", &f]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("hypothesis holds"));
    let out = run(&["audit", &f, "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn cells_and_homology() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.json", COLLINEAR);
    let v = json(&run(&["cells", &f]));
    assert_eq!(v["n"], 3);
    assert_eq!(v["euler_characteristic"], 2);
    let v = json(&run(&["homology", &f]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
    let v = json(&run(&["homology", &f, "--subfamily", "A,-B"]));
    assert_eq!(v["reduced_betti_gf2"], serde_json::json!([0, 0]));
}

#[test]
fn generators_round_trip_through_solve() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.json");
    let p = p.to_str().unwrap();
    let out = run(&["gen", "product", "--d", "2", "--k", "1", "--points", "0;2;5", "--matroid", "uniform:2", "--seed", "7", "-o", p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run(&["solve", p]).status.code(), Some(0));

    let a = run(&["gen", "hadwiger", "--n", "3", "--seed", "5"]);
    let b = run(&["gen", "hadwiger", "--n", "3", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let h = write(dir.path(), "h.json", &String::from_utf8(a.stdout).unwrap());
    let v = json(&run(&["solve", &h, "--colorful"]));
    assert_eq!(v["color_class"]["members"].as_array().unwrap().len(), 3);

    let r = run(&["gen", "random", "--d", "2", "--k", "1", "--seed", "3"]);
    assert_eq!(r.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&r.stderr).contains("accepted 1/"));
    let rf = write(dir.path(), "r.json", &String::from_utf8(r.stdout).unwrap());
    assert_eq!(run(&["check", &rf]).status.code(), Some(0));
}

#[test]
fn render_draws_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.json", COLLINEAR);
    let svg = dir.path().join("c.svg");
    let out = run(&["render", &f, "--witness", "-o", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let s = fs::read_to_string(&svg).unwrap();
    assert_eq!(s.matches("<circle").count(), 3);
    assert_eq!(s.matches("<line").count(), 1);
}

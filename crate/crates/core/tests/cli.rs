use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const DIAMOND: &str = r#"{"nodes":["S","a","b","D"],"edges":[
  {"from":"S","to":"a","cap":"30"},{"from":"a","to":"D","cap":"20"},
  {"from":"S","to":"b","cap":"15"},{"from":"b","to":"D","cap":"210"}],
  "source":"S","destination":"D"}"#;

// (-x1 v x2 v x3)(x4 v x1 v -x2)(-x1 v x3 v -x5)
const RUNNING: &str = "c running example\np cnf 5 3\n-1 2 3 0\n4 1 -2 0\n-1 3 -5 0\n";
const CONTRADICTION: &str = "p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n";

fn hdroute(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdroute")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn route_picks_the_balanced_branch() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", DIAMOND);
    let out = hdroute(&["route", &g]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["path"], serde_json::json!(["S", "b", "D"]));
    assert_eq!(v["hd_capacity"], "14/1");
    assert_eq!(v["hd_capacity_decimal"], "14.000000");
    assert_eq!(v["iterations"], 0);
    assert!(v.get("trace").is_none());
    let traced = json_of(&hdroute(&["route", "--trace", &g]));
    assert_eq!(traced["trace"], serde_json::json!([]));
}

#[test]
fn compare_reports_the_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", DIAMOND);
    let v = json_of(&hdroute(&["compare", &g]));
    assert_eq!(v["fd_route"]["path"], serde_json::json!(["S", "a", "D"]));
    assert_eq!(v["fd_route"]["fd_capacity"], "20/1");
    assert_eq!(v["fd_route"]["hd_capacity"], "12/1");
    assert_eq!(v["hd_route"]["hd_capacity"], "14/1");
    assert_eq!(v["ratio"], "7/6");
}

#[test]
fn decide_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", DIAMOND);
    let yes = hdroute(&["decide", &g, "--threshold", "14"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(json_of(&yes)["decision"], true);
    let no = hdroute(&["decide", &g, "--threshold", "14.0001"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(json_of(&no)["decision"], false);
    let bad = hdroute(&["decide", &g, "--threshold", "0"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(json_of(&bad)["error"].as_str().unwrap().contains("threshold must be positive"));
    let missing = hdroute(&["decide", &g]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn reduce_then_decide_follows_satisfiability() {
    let dir = tempfile::tempdir().unwrap();
    for (name, cnf, expect) in [("running", RUNNING, 0), ("contradiction", CONTRADICTION, 1)] {
        let f = write(dir.path(), &format!("{name}.cnf"), cnf);
        let out_path = dir.path().join(format!("{name}.json"));
        let out = hdroute(&["reduce", &f, "--out", out_path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let summary = json_of(&out);
        assert_eq!(summary["threshold"], "2/1");
        let sidecar = dir.path().join(format!("{name}.provenance.json"));
        assert_eq!(summary["provenance"], sidecar.display().to_string());
        let prov: Value = serde_json::from_str(&std::fs::read_to_string(&sidecar).unwrap()).unwrap();
        assert!(prov.as_object().unwrap().contains_key("S"));
        // threshold comes from the graph document
        let decided = hdroute(&["decide", out_path.to_str().unwrap()]);
        assert_eq!(decided.status.code(), Some(expect), "{name}");
    }
    let f = write(dir.path(), "r.cnf", RUNNING);
    let v = json_of(&hdroute(&["reduce", &f]));
    assert_eq!(v["nodes"].as_array().unwrap().len(), 27);
}

#[test]
fn cycles_on_a_dag_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", DIAMOND);
    let v = json_of(&hdroute(&["cycles", &g]));
    assert_eq!(v["cycles"], 0);
}

#[test]
fn gen_is_deterministic_and_seed_overridable() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"kind":"random","vertices":7,"edge_prob":0.4,"back_edges":2,"cap_min":1,"cap_max":9,"seed":5}"#,
    );
    let a = hdroute(&["gen", &spec]);
    let b = hdroute(&["gen", &spec]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = hdroute(&["gen", &spec, "--seed", "6"]);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(json_of(&c)["genspec"]["seed"], 6);

    let gap = write(dir.path(), "gap.json", r#"{"kind":"gap","c":"10","delta":"1","m":"1000"}"#);
    assert_eq!(hdroute(&["gen", &gap]).status.code(), Some(0));
    assert_eq!(hdroute(&["gen", &gap, "--seed", "1"]).status.code(), Some(2));
}

#[test]
fn oracle_matches_route_on_the_diamond() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", DIAMOND);
    let v = json_of(&hdroute(&["oracle", &g]));
    assert_eq!(v["hd_capacity"], "14/1");
    assert_eq!(v["fd_capacity"], "20/1");
    assert_eq!(v["fd_path"], serde_json::json!(["S", "a", "D"]));
}

#[test]
fn malformed_input_is_a_json_error() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "bad.json", "{\"nodes\": [");
    let out = hdroute(&["route", &g]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json_of(&out)["error"].is_string());
    assert!(!out.stderr.is_empty());
}

#[test]
fn unreachable_destination_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(
        dir.path(),
        "cut.json",
        r#"{"nodes":["S","a","D"],"edges":[{"from":"S","to":"a","cap":"1"}],"source":"S","destination":"D"}"#,
    );
    assert_eq!(hdroute(&["route", &g]).status.code(), Some(3));
}

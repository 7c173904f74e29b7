// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::{Command, Output};

fn g2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2")).args(args).output().expect("spawn g2")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("g2-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn modpoint_of_the_worked_example() {
    let o = g2(&["modpoint", "1,0,-14,0,-82,0,1"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "r\t-1\ni1\t-49281147/5410276\ni2\t706232480445/12584301976\ni3\t3071021069999403/17429644021121376256\n"
    );
}

#[test]
fn polynomial_and_comma_input_agree() {
    let a = g2(&["modpoint", "1,0,-14,0,-82,0,1"]);
    let b = g2(&["modpoint", "x^6-14*x^4-82*x^2+1"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn classify_sextic_and_key() {
    assert_eq!(stdout(&g2(&["classify", "1,0,1,0,1,0,1"])), "aut\t[8,3] D4\n");
    let key = "-1,81/20,-729/200,729/25600000";
    assert_eq!(stdout(&g2(&["classify", key])), stdout(&g2(&["classify", "1,0,0,0,0,0,-1"])));
}

#[test]
fn json_output_parses() {
    let o = g2(&["--json", "classify", "1,0,-14,0,-82,0,1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["aut"], serde_json::json!([4, 2]));
    let o = g2(&["--json", "modpoint", "1,0,-14,0,-82,0,1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["key"][0], serde_json::json!(-1));
}

#[test]
fn build_then_stats_and_query() {
    let out = scratch("l1.jsonl");
    let o = g2(&["build", "L1", "--max", "1", "--out", out.to_str().unwrap(), "--jobs", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&g2(&["stats", out.to_str().unwrap()]));
    assert_eq!(s, "h\tP6\tcurves\tV4\tD4\tD6\n1\t1093\t230\t28\t11\t2\n");
    let q = stdout(&g2(&["query", out.to_str().unwrap(), "-1,1,2,3"]));
    assert_eq!(q, "absent\n");
    let q = stdout(&g2(&["query", out.to_str().unwrap(), "-1,81/20,-729/200,729/25600000"]));
    assert!(q.contains("h\t1\n"), "{q}");
}

#[test]
fn minimize_at_two() {
    let s = stdout(&g2(&["minimize", "1,0,0,1,0,0,8589934592", "--prime", "2"]));
    assert!(s.starts_with("m\t5\n"), "{s}");
    assert!(s.contains("height\t262144\n"), "{s}");
}

#[test]
fn exit_codes() {
    assert_eq!(g2(&["invariants", "1,0,0,0,0,0,-1"]).status.code(), Some(0));
    // J10 = 0 is a domain error
    assert_eq!(g2(&["modpoint", "1,2,1,0,0,0,0"]).status.code(), Some(2));
    assert_eq!(g2(&["modpoint", "1,2,3"]).status.code(), Some(1));
    assert_eq!(g2(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(g2(&["--help"]).status.code(), Some(0));
}

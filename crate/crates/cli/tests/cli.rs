use std::process::{Command, Output};

use serde_json::{json, Value};

fn octosolve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octosolve"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn square_roots_of_one_over_c() {
    let v = json_of(&octosolve(&["solve", "--field", "C", "--poly", "0,0,1", "--rhs", "1,0,0,0,0,0,0,1"]));
    assert_eq!(v["schema"], json!(1));
    assert_eq!(v["cardinality"], json!("infinite"));
    assert_eq!(v["completeness"], json!("complete"));
    assert_eq!(v["orbits"], json!([{"kind": "O2", "params": [[-1.0, 0.0], [1.0, 0.0]]}]));
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    assert_eq!(points[0][0], json!([-1.0, 0.0]));
    assert_eq!(points[1][0], json!([1.0, 0.0]));
}

#[test]
fn classify_e1_plus_4e2() {
    let v = json_of(&octosolve(&["classify", "--field", "Q", "--x", "1,0,0,0,0,0,0,4"]));
    assert_eq!(v, json!({"kind": "O2", "params": [1, 4], "schema": 1}));
}

#[test]
fn verify_a_square_root() {
    let v = json_of(&octosolve(&[
        "verify", "--field", "C", "--poly", "0,0,1", "--rhs", "1,1,0,0,0,0,0,1", "--candidate", "1,0.5,0,0,0,0,0,1",
    ]));
    assert_eq!(v["solves"], json!(true));
    let v = json_of(&octosolve(&[
        "verify", "--field", "C", "--poly", "0,0,1", "--rhs", "1,1,0,0,0,0,0,1", "--candidate", "1,1,0,0,0,0,0,1",
    ]));
    assert_eq!(v["solves"], json!(false));
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["sample", "--field", "C", "--kind", "O2", "--params", "1,4", "--count", "5", "--seed", "7"],
        vec!["solve", "--field", "F:3^2", "--poly", "0,0,1", "--rhs", "1,0,0,0,0,0,0,1"],
        vec!["fuzz", "--field", "F:5", "--trials", "200", "--seed", "3"],
        vec!["oracle", "--field", "F:2", "--poly", "0,0,1", "--rhs", "0,0,0,0,0,0,0,0", "--jobs", "2"],
    ] {
        let a = octosolve(&args);
        let b = octosolve(&args);
        assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn printed_octonions_parse_back() {
    let v = json_of(&octosolve(&["sample", "--field", "C", "--kind", "O3", "--params", "2", "--count", "3"]));
    for x in v["samples"].as_array().unwrap() {
        let coords: Vec<String> = x
            .as_array()
            .unwrap()
            .iter()
            .map(|c| {
                let (re, im) = (c[0].as_f64().unwrap(), c[1].as_f64().unwrap());
                if im < 0.0 { format!("{re}{im}i") } else { format!("{re}+{im}i") }
            })
            .collect();
        let literal = coords.join(",");
        let back = json_of(&octosolve(&["mul", "--field", "C", "--a", &literal, "--b", "1,0,0,0,0,0,0,1"]));
        assert_eq!(&back["product"], x);
    }
    let sol = json_of(&octosolve(&["solve", "--field", "F:7", "--poly", "0,0,1", "--rhs", "1,0,0,0,0,0,0,4"]));
    for p in sol["points"].as_array().unwrap() {
        let literal = p.as_array().unwrap().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        let check = json_of(&octosolve(&[
            "verify", "--field", "F:7", "--poly", "0,0,1", "--rhs", "1,0,0,0,0,0,0,4", "--candidate", &literal,
        ]));
        assert_eq!(check["solves"], json!(true));
    }
}

#[test]
fn pretty_output_is_the_same_document() {
    let args = ["eigen", "--field", "Q", "--x", "1,1,0,0,0,0,0,1"];
    let compact = json_of(&octosolve(&args));
    let mut pretty_args = args.to_vec();
    pretty_args.extend(["--output", "pretty"]);
    let pretty = octosolve(&pretty_args);
    assert!(String::from_utf8_lossy(&pretty.stdout).contains("\n  "));
    assert_eq!(json_of(&pretty), compact);
    assert_eq!(compact, json!({"lambda1": 1, "lambda2": 1, "in_base_field": true, "schema": 1}));
}

#[test]
fn exit_codes() {
    // usage
    assert_eq!(octosolve(&["solve", "--field", "F:4", "--poly", "0,0,1", "--rhs", "1,0,0,0,0,0,0,1"]).status.code(), Some(2));
    assert_eq!(octosolve(&["solve", "--field", "C", "--poly", "0,0,x", "--rhs", "1,0,0,0,0,0,0,1"]).status.code(), Some(2));
    assert_eq!(octosolve(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(octosolve(&["sample", "--field", "C", "--kind", "scalar", "--params", "1"]).status.code(), Some(2));
    // mathematical failure: field too large for the oracle
    let out = octosolve(&["oracle", "--field", "F:11", "--poly", "0,0,1", "--rhs", "0,0,0,0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds"));
    assert_eq!(octosolve(&["--help"]).status.code(), Some(0));
}

#[test]
fn oracle_reports_a_match() {
    let v = json_of(&octosolve(&["oracle", "--field", "F:3", "--poly", "0,0,1", "--rhs", "1,0,0,0,0,0,0,1"]));
    assert_eq!(v["comparison"]["verdict"], json!("match"));
    assert_eq!(v["report"]["scanned"], json!(6561));
}

#[test]
fn closure_degree_changes_the_working_field() {
    // x² = −1 over F_3 has no scalar roots; over F_9 it has ±i
    let base = json_of(&octosolve(&["solve", "--field", "F:3", "--poly", "0,0,1", "--rhs", "2,0,0,0,0,0,0,2"]));
    assert_eq!(base["points"], json!([]));
    let ext = json_of(&octosolve(&[
        "solve", "--field", "F:3", "--closure-degree", "2", "--poly", "0,0,1", "--rhs", "2,0,0,0,0,0,0,2",
    ]));
    assert_eq!(ext["points"].as_array().unwrap().len(), 2);
}

#[test]
fn nth_root_of_zero_has_a_square_zero_family() {
    let v = json_of(&octosolve(&["nth-root", "--field", "F:2^6", "--n", "2", "--rhs", "0,0,0,0,0,0,0,0"]));
    assert_eq!(v["points"], json!([[0, 0, 0, 0, 0, 0, 0, 0]]));
    assert_eq!(v["orbits"], json!([{"kind": "O3", "params": [0]}]));
}

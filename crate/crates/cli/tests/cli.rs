use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn howe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_howe")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("one JSON document")
}

#[test]
fn normalize_prints_element_json() {
    let v = stdout_json(&howe(&["normalize", "--n", "1", "-1 1"]));
    assert_eq!(v, json!({"n": 1, "terms": [{"S": [1, -1], "c": {"2": -1}}]}));
    let v = stdout_json(&howe(&["normalize", "--n", "3", "3,3"]));
    assert_eq!(v["terms"], json!([]));
    let v = stdout_json(&howe(&["normalize", "--n", "1", "d1 v1"]));
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn canonical_matches_rainbow_example() {
    let v = stdout_json(&howe(&["canonical", "--n", "2", "--subset", "1,-1"]));
    assert_eq!(v["terms"], json!([{"S": [1, -1], "c": {"0": 1}}, {"S": [2, -2], "c": {"-1": 1}}]));
    assert_eq!(v["rainbow"], json!([[1, 2]]));
}

#[test]
fn act_reads_stdin_and_round_trips() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_howe"))
        .args(["act", "--n", "2", "--word", "f1", "--on", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let input = json!({"n": 2, "terms": [{"S": [1, -2], "c": {"0": 1}}]});
    child.stdin.take().unwrap().write_all(input.to_string().as_bytes()).unwrap();
    let v = stdout_json(&child.wait_with_output().unwrap());
    assert_eq!(v["terms"], json!([{"S": [1, -1], "c": {"0": 1}}, {"S": [2, -2], "c": {"-1": 1}}]));

    let v = stdout_json(&howe(&["act", "--n", "1", "--word", "T", "--subset", ""]));
    assert_eq!(v["terms"], json!([{"S": [1, -1], "c": {"0": 1}}]));
}

#[test]
fn crystal_exports() {
    let v = stdout_json(&howe(&["crystal", "--n", "3", "--k", "2", "--json"]));
    assert_eq!(v["nodes"].as_array().unwrap().len(), 14);
    let out = howe(&["crystal", "--n", "3", "--k", "1", "--dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 5);
}

#[test]
fn tilting_csv_block() {
    let out = howe(&["tilting", "--n", "78", "--p", "7", "--ell", "3", "--csv"]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<Vec<String>> = rdr.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    assert_eq!(rows.len(), 79);
    // Row T(w6): Δ(w2) + Δ(w6).
    let support: Vec<usize> = (1..rows[6].len()).filter(|&j| rows[6][j] == "1").map(|j| j - 1).collect();
    assert_eq!(support, vec![2, 6]);
    let v = stdout_json(&howe(&["tilting", "--n", "3", "--json"]));
    assert_eq!(v["rows"], json!([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]));
}

#[test]
fn qbinom_verdicts() {
    let v = stdout_json(&howe(&["qbinom", "--m", "68", "--i", "28", "--p", "7", "--ell", "3"]));
    assert_eq!(v["nonzero"], json!(false));
    assert_eq!(v["digits_m"], json!([2, 1, 3]));
    let v = stdout_json(&howe(&["qbinom", "--m", "68", "--i", "25", "--p", "7", "--ell", "3"]));
    assert_eq!(v["nonzero"], json!(true));
}

#[test]
fn verify_streams_reports() {
    let out = howe(&["verify", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines.len() >= 17);
    assert!(lines.iter().all(|r| r["status"] == "pass" && r["witness"].is_null()));
    assert_eq!(lines[0]["check"], "flatness");

    let out = howe(&["verify", "--n", "2", "--check", "kernel_weyl"]);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["data"]["kernel_dims"], json!([1, 4, 5, 0, 0]));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(howe(&["verify", "--n", "1", "--check", "nope"]).status.code(), Some(2));
    assert_eq!(howe(&["verify", "--n", "3", "--check", "images_agree"]).status.code(), Some(2));
    assert_eq!(howe(&["canonical", "--n", "2", "--subset", "1,1"]).status.code(), Some(2));
    assert_eq!(howe(&["tilting", "--n", "3", "--p", "4", "--ell", "3"]).status.code(), Some(2));
    assert_eq!(howe(&["frobnicate"]).status.code(), Some(2));
    let capped = Command::new(env!("CARGO_BIN_EXE_howe"))
        .args(["verify", "--n", "2", "--check", "commuting"])
        .env("HOWE_MAX_RANK", "1")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
}

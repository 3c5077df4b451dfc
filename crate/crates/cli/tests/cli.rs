use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use sigflow_cli::{run, EXIT_GUARD, EXIT_INVALID_INPUT, EXIT_OK};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json")).display().to_string()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("sigflow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

fn invoke(args: &[&str]) -> (i32, Value) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let out = run(&args);
    let report = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, report)
}

fn classes(report: &Value) -> Vec<String> {
    report["result"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["class"]["type"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn check_accepts_valid_files() {
    let (code, r) = invoke(&["check", &fixture("g3")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["result"]["flow"]["conservative"], true);
    assert_eq!(r["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn check_names_the_offending_edge_and_vertex() {
    let (code, r) = invoke(&["check", &fixture("bad_orientation")]);
    assert_eq!(code, EXIT_INVALID_INPUT);
    assert!(r["error"].as_str().unwrap().contains("edge `p`"));
    let (code, r) = invoke(&["check", &fixture("bad_flow")]);
    assert_eq!(code, EXIT_INVALID_INPUT);
    let msg = r["error"].as_str().unwrap();
    assert!(msg.contains("vertex `u`") && msg.contains("charge -1"), "{msg}");
}

#[test]
fn parse_errors_carry_line_numbers() {
    let path = scratch("broken.json", "{\n  \"vertices\": [\"v\"],\n  \"edges\": [oops]\n}\n");
    let (code, r) = invoke(&["check", &path]);
    assert_eq!(code, EXIT_INVALID_INPUT);
    assert!(r["error"].as_str().unwrap().contains("line 3"));
    let (code, _) = invoke(&["check", "/nonexistent/file.json"]);
    assert_eq!(code, EXIT_INVALID_INPUT);
}

#[test]
fn decompose_fixtures() {
    let (_, r) = invoke(&["decompose", &fixture("g3")]);
    assert_eq!(classes(&r), ["TypeIII"]);
    let (_, r) = invoke(&["decompose", &fixture("triangle")]);
    assert_eq!(classes(&r), ["TypeI", "TypeI"]);
    let (_, r) = invoke(&["decompose", &fixture("g2_double")]);
    assert_eq!(classes(&r), ["TypeII", "TypeII"]);
    let (code, r) = invoke(&["decompose", &fixture("g5")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(classes(&r), ["NotCircuit"]);
    let summands = r["result"]["terms"][0]["half_decomposition"]["summands"].as_array().unwrap();
    assert_eq!(summands.len(), 2);
    assert!(summands.iter().all(|s| s["type"] == "TypeIII"));
    assert!(r["result"]["terms"][0].get("trace").is_none());
}

#[test]
fn decompose_trace_and_trivial_flow() {
    let (_, r) = invoke(&["decompose", &fixture("g5"), "--trace"]);
    let trace = &r["result"]["terms"][0]["trace"];
    assert_eq!(trace["steps"].as_array().unwrap().len(), 6);
    let zero = std::fs::read_to_string(fixture("g3")).unwrap().replace(r#""a": 1, "p": 2, "b": 1"#, r#""a": 0"#);
    let (code, r) = invoke(&["decompose", &scratch("zero.json", &zero)]);
    assert_eq!(code, EXIT_OK);
    assert!(r["result"]["terms"].as_array().unwrap().is_empty());
    assert!(r["result"]["notice"].is_string());
}

#[test]
fn decompose_as_dot() {
    let out = run(&["decompose".into(), fixture("g5"), "--format".into(), "dot".into()]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("digraph \"term0\""));
    assert_eq!(out.stdout.matches("subgraph cluster_").count(), 3);
    assert_eq!(out.stdout.matches("style=dashed").count(), 2);
}

#[test]
fn classify_fixtures() {
    let (_, r) = invoke(&["classify", &fixture("g2")]);
    assert_eq!(r["result"]["class"]["type"], "TypeII");
    let (code, r) = invoke(&["classify", &fixture("unbalanced_triangle")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["result"]["parity"]["holds"], false);
    assert!(r["result"]["direction"].is_null());
    let (_, r) = invoke(&["classify", &fixture("g5")]);
    assert_eq!(r["result"]["class"]["type"], "NotCircuit");
    assert_eq!(r["result"]["indicator"]["a"], 1);
}

#[test]
fn oracle_on_a_file() {
    let (code, r) = invoke(&["oracle", &fixture("g3")]);
    assert_eq!(code, EXIT_OK);
    let row = &r["result"]["rows"][0];
    assert_eq!(row["oracle"], true);
    assert_eq!(row["fast"], true);
    let (_, r) = invoke(&["oracle", &fixture("unbalanced_triangle"), "--bound", "2"]);
    assert_eq!(r["result"]["disagreements"], 0);
}

#[test]
fn oracle_guards() {
    let edges: Vec<String> =
        (0..11).map(|i| format!(r#"{{"id": "e{i}", "ends": ["u", "v"], "sign": 1}}"#)).collect();
    let big = format!(r#"{{"vertices": ["u", "v"], "edges": [{}]}}"#, edges.join(","));
    let (code, r) = invoke(&["oracle", &scratch("big.json", &big)]);
    assert_eq!(code, EXIT_GUARD);
    assert_eq!(r["status"], "guard");
    let (code, _) = invoke(&["oracle", &fixture("g3"), "--bound", "9"]);
    assert_eq!(code, EXIT_GUARD);
    let (code, _) = invoke(&["oracle", "--family", "--max-edges", "11"]);
    assert_eq!(code, EXIT_GUARD);
}

#[test]
fn oracle_small_family() {
    let (code, r) = invoke(&["oracle", "--family", "--max-edges", "3", "--bound", "2", "--trace"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["result"]["zero_disagreements"], true);
    let table = r["result"]["verdict_table"].as_array().unwrap();
    assert_eq!(table.len() as u64, r["result"]["summary"]["flows"].as_u64().unwrap());
}

#[test]
fn out_flag_writes_the_report() {
    let target = std::env::temp_dir().join(format!("sigflow-out-{}.json", std::process::id()));
    let out = run(&["classify".into(), fixture("g3"), "--out".into(), target.display().to_string()]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(written["result"]["class"]["type"], "TypeIII");
    std::fs::remove_file(target).ok();
}

#[test]
fn binary_exit_statuses() {
    let bin = env!("CARGO_BIN_EXE_sigflow");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["check", &fixture("g2")]), Some(0));
    assert_eq!(status(&["check", &fixture("bad_flow")]), Some(1));
    assert_eq!(status(&["frobnicate"]), Some(1));
    assert_eq!(status(&["oracle", &fixture("g2"), "--bound", "7"]), Some(2));
    assert_eq!(status(&["--help"]), Some(0));
}

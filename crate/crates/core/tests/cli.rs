use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylpieces")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    assert_eq!(code(out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn records(out: &Output) -> Vec<Value> {
    json(out)["records"].as_array().expect("records").clone()
}

#[test]
fn enumerate_counts_match_quotients() {
    assert_eq!(records(&run(&["enumerate", "--type", "A2", "--J", "1"])).len(), 3);
    assert_eq!(records(&run(&["enumerate", "--type", "A3", "--J", "1,3"])).len(), 6);
    assert_eq!(records(&run(&["enumerate", "--type", "A3", "--J", "1,3", "--delta", "flip"])).len(), 6);
    assert_eq!(records(&run(&["enumerate", "--type", "A2", "--J", "1,2"])).len(), 1);
}

#[test]
fn document_header() {
    let doc = json(&run(&["enumerate", "--type", "B2", "--J", "2"]));
    assert_eq!(doc["version"], "weylpieces/1");
    assert_eq!(doc["command"], "enumerate");
    assert_eq!(doc["type"], "B2");
    assert_eq!(doc["J"], serde_json::json!([2]));
    let keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(&keys[..3], ["version", "command", "type"]);
}

#[test]
fn csv_and_pretty_formats() {
    let out = run(&["enumerate", "--type", "A2", "--J", "1", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "w,K,length");
    assert_eq!(lines.len(), 4);
    assert!(lines.contains(&"1 2,,2"));

    let out = run(&["enumerate", "--type", "A2", "--J", "1", "--format", "pretty"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("---"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn epsilon_and_classify() {
    let rec = &records(&run(&["epsilon", "--type", "A2", "--J", "1", "--w", "2"]))[0];
    assert_eq!(rec["v"], serde_json::json!([2]));
    let rec = &records(&run(&["classify", "--type", "A2", "--J", "1", "--x", "1"]))[0];
    assert_eq!(rec["w"], serde_json::json!([]));
    let verbose = &records(&run(&["epsilon", "--type", "A3", "--J", "1", "--w", "2,3", "--verbose"]))[0];
    assert!(verbose.get("dual_sequence").is_some());
}

#[test]
fn bedard_sequence_ends_at_w() {
    let rec = &records(&run(&["bedard", "--type", "A3", "--J", "1,2", "--w", "3"]))[0];
    let seq = rec["sequence"].as_array().unwrap();
    assert_eq!(seq.last().unwrap()["w"], serde_json::json!([3]));
    assert_eq!(seq[0]["J"], serde_json::json!([1, 2]));
}

#[test]
fn wp_table_is_an_involution() {
    let rows = records(&run(&["wp", "--type", "A3", "--J", "2", "--sigma", "neg"]));
    assert_eq!(rows.len(), 12);
    for r in &rows {
        let back = rows.iter().find(|s| s["w"] == r["image"]).expect("image listed");
        assert_eq!(back["image"], r["w"]);
    }
}

#[test]
fn wp_rejects_mismatched_levi() {
    let out = run(&["wp", "--type", "A2", "--J", "1", "--delta", "flip", "--sigma", "neg"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("σ"));
}

#[test]
fn doubled_wset_on_a1xa1() {
    let rows = records(&run(&[
        "wset", "--type", "A1xA1", "--J", "", "--sigma", "productSwap", "--tau", "productSwap", "--joracle", "doubled",
    ]));
    assert_eq!(rows.len(), 2);
    let mut lengths: Vec<usize> = rows.iter().map(|r| r["w"].as_array().unwrap().len()).collect();
    lengths.sort();
    assert_eq!(lengths, [0, 2], "the graph of the inverse map: (e, e) and (s, s)");
}

#[test]
fn custom_oracle_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("oracle.json");
    let body = serde_json::json!({
        "version": "weylpieces/1",
        "sets": [
            {"J": [1, 2], "elements": [[]]},
            {"J": [], "elements": [[]]}
        ]
    });
    fs::write(&path, body.to_string()).unwrap();
    let arg = format!("custom:{}", path.display());
    let rows = records(&run(&["wset", "--type", "A2", "--J", "", "--sigma", "neg", "--tau", "neg", "--joracle", &arg]));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["w"], serde_json::json!([]));

    fs::write(&path, r#"{"version":"weylpieces/1","sets":[{"J":[1,2],"elements":[[1,2]]}]}"#).unwrap();
    let out = run(&["wset", "--type", "A2", "--J", "", "--sigma", "neg", "--tau", "neg", "--joracle", &arg]);
    assert_eq!(code(&out), 2, "an element that is not a twisted involution is rejected");
}

#[test]
fn replay_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pieces.json");
    let out = run(&["enumerate", "--type", "A3", "--J", "1,3", "--delta", "flip"]);
    assert_eq!(code(&out), 0);
    fs::write(&path, &out.stdout).unwrap();
    let p = path.to_str().unwrap();
    let doc = json(&run(&["enumerate", "--type", "A3", "--J", "1,3", "--delta", "flip", "--replay", p]));
    assert_eq!(doc["valid"], true);

    let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["records"][1]["K"] = serde_json::json!([1, 3]);
    fs::write(&path, v.to_string()).unwrap();
    assert_eq!(code(&run(&["enumerate", "--type", "A3", "--J", "1,3", "--delta", "flip", "--replay", p])), 2);

    v["version"] = "weylpieces/0".into();
    fs::write(&path, v.to_string()).unwrap();
    assert_eq!(code(&run(&["enumerate", "--type", "A3", "--J", "1,3", "--delta", "flip", "--replay", p])), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["enumerate", "--type", "Q2", "--J", "1"])), 2);
    assert_eq!(code(&run(&["enumerate", "--type", "A2", "--J", "5"])), 2);
    assert_eq!(code(&run(&["epsilon", "--type", "A2", "--J", "1", "--w", "x"])), 2);
    assert_eq!(code(&run(&["epsilon", "--type", "A2", "--J", "1", "--w", "2,1"])), 2);
    assert_eq!(code(&run(&["enumerate", "--type", "A2"])), 0);
    assert_eq!(code(&run(&["nonsense"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
    let out = run(&["enumerate", "--type", "B3", "--J", "1", "--guard", "10"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
}

#[test]
fn errors_go_to_stderr_only() {
    let out = run(&["enumerate", "--type", "Q2", "--J", "1"]);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

fn selftest(args: &[&str]) -> Value {
    let mut all = vec!["selftest"];
    all.extend_from_slice(args);
    json(&run(&all))
}

#[test]
fn selftest_small() {
    let doc = selftest(&["--types", "A1"]);
    assert_eq!(doc["passed"], true);
    assert!(doc["properties"].as_array().unwrap().len() > 10);

    let doc = selftest(&["--types", "A1,A2,B2,A1xA1"]);
    assert_eq!(doc["passed"], true);
    assert!(doc["properties"].as_array().unwrap().iter().all(|p| p["passed"] == true));
}

#[test]
fn selftest_with_cartan_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.txt");
    fs::write(&path, "2 -1\n-3 2\n").unwrap();
    let doc = selftest(&["--types", "A1", "--cartan", path.to_str().unwrap()]);
    assert_eq!(doc["passed"], true);

    fs::write(&path, "2 -1\n-1 3\n").unwrap();
    let out = run(&["selftest", "--types", "A1", "--cartan", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

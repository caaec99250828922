use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn rankcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankcode")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn twisted_code_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.json");
    let built = rankcode(&[
        "construct", "gen-twisted", "--p", "3", "--n", "4", "--k", "2", "--s", "1", "--h", "1",
        "--eta-modulus", "x4-x3-1", "-o", path(&file),
    ]);
    let r = stdout_json(&built);
    assert_eq!(r["results"]["dim"], 8);

    let r = stdout_json(&rankcode(&["analyze", path(&file), "--mrd", "--kernel"]));
    assert_eq!(r["results"]["mrd"]["mrd"], true);
    assert_eq!(r["results"]["mrd"]["d"], 3);
    assert_eq!(r["results"]["kernel"]["is_field"], true);
    assert_eq!(r["results"]["kernel"]["field_order"], 3);

    let r = stdout_json(&rankcode(&["spectrum", path(&file), "--side", "middle", "--level", "3"]));
    let spectrum = &r["results"]["spectrum"];
    assert_eq!(spectrum["levels"]["3"]["subspaces"], 40);
    let entries = spectrum["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 40);
    assert!(entries.iter().all(|e| e["level"] == 3 && e["field_order"] == 3));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.json");
    stdout_json(&rankcode(&["construct", "gabidulin", "--p", "2", "--n", "4", "--k", "2", "-o", path(&file)]));
    let a = stdout_json(&rankcode(&["analyze", path(&file), "--workers", "1"]));
    let b = stdout_json(&rankcode(&["analyze", path(&file), "--workers", "3"]));
    assert_eq!(a["results"], b["results"]);
    let again = stdout_json(&rankcode(&["analyze", path(&file), "--workers", "1"]));
    assert_eq!(a, again);
}

#[test]
fn knuth_writes_six_files() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.json");
    stdout_json(&rankcode(&["construct", "spread", "--p", "2", "--n", "3", "--self-dual", "-o", path(&file)]));
    let out = dir.path().join("orbit");
    let r = stdout_json(&rankcode(&["knuth", path(&file), "--verify-six", "--out-dir", path(&out)]));
    assert_eq!(r["results"]["distinct"], 1);
    assert_eq!(r["results"]["files"].as_array().unwrap().len(), 6);
    assert_eq!(r["results"]["six_relations"]["hypothesis_met"], true);
    for op in ["id", "opp", "top", "opp-top", "top-opp", "top-opp-top"] {
        assert!(out.join(format!("{op}.json")).exists());
    }
}

#[test]
fn dho_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("d.json");
    stdout_json(&rankcode(&["dho", "build", "--n", "4", "-o", path(&file)]));
    let r = stdout_json(&rankcode(&["dho", "validate", path(&file)]));
    assert_eq!(r["results"]["valid"], true);
    let r = stdout_json(&rankcode(&["dho", "predicates", path(&file)]));
    assert_eq!(r["results"]["alternating"], true);
    assert_eq!(r["results"]["doubly_dual"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(rankcode(&["--help"]).status.code(), Some(0));
    let bad = rankcode(&["analyze"]);
    assert_eq!(bad.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&bad.stderr).unwrap();
    assert_eq!(err["error"], "usage");

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.json");
    stdout_json(&rankcode(&["construct", "gabidulin", "--p", "2", "--n", "4", "--k", "2", "-o", path(&file)]));
    let guarded = rankcode(&["analyze", path(&file), "--weights", "--max-enum", "10"]);
    assert_eq!(guarded.status.code(), Some(3));

    let missing = rankcode(&["analyze", path(&dir.path().join("none.json"))]);
    assert_eq!(missing.status.code(), Some(1));

    let twisted_norm_one = rankcode(&["construct", "gen-twisted", "--p", "2", "--n", "4", "--k", "2", "--eta", "2"]);
    assert_eq!(twisted_norm_one.status.code(), Some(1));
}

#[test]
fn verify_reports_a_single_criterion() {
    let r = stdout_json(&rankcode(&["verify", "acceptance", "--filter", "right-nucleus-counterexample"]));
    assert_eq!(r["results"]["passed"], true);
    assert_eq!(r["results"]["criteria"].as_array().unwrap().len(), 1);
}

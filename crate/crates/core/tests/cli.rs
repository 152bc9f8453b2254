use std::process::{Command, Output};

use serde_json::{json, Value};

mod common;
use common::fixture_path;

fn run(args: &[&str]) -> (i32, Value) {
    let Output { status, stdout, .. } =
        Command::new(env!("CARGO_BIN_EXE_quasilinkage")).args(args).output().expect("binary runs");
    let text = String::from_utf8(stdout).unwrap();
    let value = if text.trim().is_empty() { Value::Null } else { serde_json::from_str(&text).unwrap() };
    (status.code().unwrap(), value)
}

fn game(name: &str) -> String {
    fixture_path(name).to_str().unwrap().to_owned()
}

#[test]
fn validate_example6() {
    let (code, v) = run(&["validate", "--game", &game("example6.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["valid"], true);
    assert_eq!(v["symmetric"], true);
    assert_eq!(v["comparable"], false);
}

#[test]
fn validate_dictator_reports_singleton() {
    let (code, v) = run(&["validate", "--game", &game("apex_5.json")]);
    assert_eq!(code, 1);
    assert_eq!(v, json!({"valid": false, "violation": {"kind": "MissingSingleton", "witness": [[1]]}}));
}

#[test]
fn realize_both_ways() {
    let (code, v) = run(&["realize", "--game", &game("example6.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["real"], false);
    assert!(v["certificate"].is_array());

    let (code, v) = run(&["realize", "--game", &game("pentagon.json")]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"real": true, "lengths": ["1", "1", "1", "1", "1"]}));
}

#[test]
fn homology_with_fs_check() {
    let (code, v) = run(&["homology", "--game", &game("pentagon.json"), "--fs-check"]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"betti": [1, 8, 1], "fs_match": true, "torsion": [[], [], []]}));

    let (_, v) = run(&["homology", "--game", &game("example6.json"), "--method", "cellular", "--fs-check"]);
    assert_eq!(v, json!({"betti": [1, 5, 5, 1], "fs_match": null, "torsion": [[], [2], [], []]}));
}

#[test]
fn flip_round_trip() {
    let (_, once) = run(&["flip", "--game", &game("flip_n6.json"), "--set", "4,5,6"]);
    let dir = std::env::temp_dir().join(format!("ql-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("flipped.json");
    std::fs::write(&path, once.to_string()).unwrap();
    let (code, twice) = run(&["flip", "--game", path.to_str().unwrap(), "--set", "1,2,3"]);
    assert_eq!(code, 0);
    let original: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture_path("flip_n6.json")).unwrap()).unwrap();
    assert_eq!(twice, original);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn extend_and_complex() {
    let (code, v) = run(&["extend", "--n", "5", "--sets", "1,2;3,4"]);
    assert_eq!(code, 0);
    assert_eq!(v["n"], 5);
    let (code, v) = run(&["complex", "--lengths", "1,1,1,1,1", "--variant", "stable"]);
    assert_eq!(code, 0);
    assert_eq!(v["f_vector"], json!([30, 60, 24]));
    assert_eq!(run(&["extend", "--n", "4", "--sets", "1,2;3,4"]).0, 1);
}

#[test]
fn star_and_audit() {
    let (code, v) = run(&["star", "--game", &game("example6.json"), "--vertex", "1,2,3,4,5,6"]);
    assert_eq!(code, 0);
    assert_eq!(v["duality"], true);
    let (code, v) = run(&["audit", "--game", &game("flip_n6.json"), "--set", "4,5,6"]);
    assert_eq!(code, 0);
    assert_eq!(v["index"], 2);
    assert_eq!(v["passes"], true);
}

#[test]
fn atlas_summary_and_budget() {
    let dir = std::env::temp_dir().join(format!("ql-atlas-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("atlas.json");
    let (code, v) = run(&["atlas", "--n", "5", "--orbits", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["total"], 76);
    assert_eq!(v["imaginary"], 0);
    assert_eq!(v["orbits"], 6);
    assert!(out.exists());
    std::fs::remove_dir_all(dir).unwrap();

    assert_eq!(run(&["atlas", "--n", "6", "--budget", "10"]).0, 3);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["validate"]).0, 2);
    assert_eq!(run(&["validate", "--game", "/nonexistent.json"]).0, 2);
    assert_eq!(run(&["complex", "--lengths", "1,1,1,1,1", "--variant", "dual"]).0, 2);
}

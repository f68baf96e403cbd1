use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helgason-super"))
        .args(args)
        .env("HELGASON_SUPER_THREADS", "1")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn rho_golden() {
    let v = json(&["rho", "1", "1", "1", "1"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["agree"], true);
    assert_eq!(strings(&v["rho"]["delta"]), ["1/2"]);
    assert_eq!(strings(&v["rho"]["eps"]), ["-1/2"]);
    let pairings: Vec<(String, String)> = v["pairings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p["root"].as_str().unwrap().into(), p["value"].as_str().unwrap().into()))
        .collect();
    let expected = [
        ("2ia^B_1", "-1"),
        ("2ia^F_1", "-1"),
        ("i(a^B_1-a^F_1)", "0"),
        ("i(a^B_1+a^F_1)", "-1"),
    ];
    assert_eq!(pairings, expected.map(|(a, b)| (a.to_string(), b.to_string())));
}

#[test]
fn spherical_golden() {
    let v = json(&["spherical", "1", "1", "1", "1", "--bound", "2"]);
    assert_eq!(v["count"], 3);
    let weights: Vec<(Vec<String>, Vec<String>)> = v["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| (strings(&w["weight"]["delta"]), strings(&w["weight"]["eps"])))
        .collect();
    let expected = [("0", "0"), ("-2", "0"), ("-2", "2")].map(|(d, e)| (vec![d.to_string()], vec![e.to_string()]));
    assert_eq!(weights, expected);
    assert!(v["weights"].as_array().unwrap().iter().all(|w| w["self_dual"] == true));
}

#[test]
fn chain_reversal_golden() {
    let v = json(&["chain", "1", "1", "1", "1", "--chain", "d2 e2 e1 d1"]);
    assert_eq!(v["palindrome"], true);
    assert_eq!(v["odd_steps"], 4);
    assert_eq!(
        strings(&v["reversal_steps"]),
        ["r[d2-e2]", "r[d2-e1]", "r[d2-d1]", "r[e1-d1]", "r[e2-d1]", "r[e2-e1]"]
    );
}

#[test]
fn negative_fraction_weights_parse() {
    let v = json(&["cfunction", "1", "1", "1", "1", "--weight", "-1/2", "1/2"]);
    assert_eq!(v["command"], "cfunction");
    let spaced = json(&["cfunction", "1", "1", "1", "1", "--weight=-1/2,1/2"]);
    assert_eq!(v, spaced);
}

#[test]
fn verify_succeeds() {
    let out = run(&["verify", "2", "1", "1", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["rho", "1", "2", "1", "1"]).status.code(), Some(2));
    assert_eq!(run(&["rho", "1", "1"]).status.code(), Some(2));
    assert_eq!(run(&["cfunction", "1", "1", "1", "1", "--weight", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["cfunction", "1", "1", "1", "1", "--weight", "1/0", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["chain", "1", "1", "1", "1", "--chain", "d1 d1 e1 e2"]).status.code(), Some(2));
}

#[test]
fn errors_go_to_stderr() {
    let out = run(&["rho", "1", "2", "1", "1"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn compatible_chain_reports_fourth_segment() {
    let v = json(&["chain", "2", "1", "2", "1"]);
    assert_eq!(v["chain"], "d3 e3 d2 e2 e1 d1");
    assert_eq!(v["fourth_segment"], "e2..e2");
    assert_eq!(json(&["chain", "1", "1", "1", "1"])["fourth_segment"], "empty");
}

//! End-to-end tests of the psi-lab binary: JSON shapes, exit codes, and
//! the graph6 piping contract.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psi-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_psi-lab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stdout: {} stderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn psi_of_the_path() {
    let out = run(&["psi", "Bg"]);
    let v = json_of(&out);
    assert_eq!(v["schema"], "psi-lab/1");
    assert_eq!(v["psi"], 2);
    assert_eq!(v["omega"], 2);
    assert_eq!(v["status"], "exact");
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
    assert!(v["bounds"].is_array());
}

#[test]
fn critical_verdicts_for_the_path() {
    let out = run(&["critical", "Bg"]);
    let v = json_of(&out);
    assert_eq!(v["critical"], false);
    assert_eq!(v["weakly_critical"], true);
    assert_eq!(v["critical_by_formula"], false);
    assert_eq!(v["critical_by_mpd"], false);
    assert_eq!(v["weakly_critical_by_mpd"], true);
}

#[test]
fn nabla_pipes_into_psi() {
    let nabla = run(&["nabla", "--k", "2", "Bg"]);
    assert!(nabla.status.success());
    let line = String::from_utf8(nabla.stdout).unwrap();
    let psi = run_with_stdin(&["psi", "-"], &line);
    let v = json_of(&psi);
    assert_eq!(v["psi"], 5);
    assert_eq!(v["n"], 6);
}

#[test]
fn join_emits_graph6() {
    let out = run(&["join", "@", "@"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "A_");

    let out = run(&["join", "--json", "@", "@"]);
    let v = json_of(&out);
    assert_eq!(v["graph6"], "A_");
    assert_eq!(v["n"], 2);
}

#[test]
fn mpd_profile_and_single_k() {
    let v = json_of(&run(&["mpd", "Bg"]));
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    let values: Vec<u64> = entries.iter().map(|e| e["value"].as_u64().unwrap()).collect();
    assert_eq!(values, vec![0, 0, 1, 2]);

    let v = json_of(&run(&["mpd", "--k", "2", "Bg"]));
    assert_eq!(v["entries"].as_array().unwrap().len(), 1);
    assert_eq!(v["entries"][0]["value"], 1);
}

#[test]
fn witness_and_structure_shapes() {
    // The 8-cycle is not weakly critical, so both witnesses exist.
    let c8 = "GhCGKC";
    let parsed = run(&["omega", c8]);
    let v = json_of(&parsed);
    assert_eq!(v["omega"], 2);

    let v = json_of(&run(&["witness", c8]));
    assert!(v["not_weakly_critical_witness"].is_object());
    assert!(v["not_critical_witness"].is_object());

    let v = json_of(&run(&["witness", "Bg"]));
    assert!(v["not_weakly_critical_witness"].is_null());
    assert!(v["not_critical_witness"].is_object());

    let v = json_of(&run(&["structure", "Bg"]));
    assert_eq!(v["report"]["kind"], "weakly-type-2");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let out = run(&["psi", "B!"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let out = run(&["mpd", "--k", "9", "Bg"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_3() {
    let out = run(&["psi", "--budget", "5", "GhCGKC"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "inconclusive");

    // The environment variable sets the default budget.
    let out = Command::new(env!("CARGO_BIN_EXE_psi-lab"))
        .args(["psi", "GhCGKC"])
        .env("PSI_LAB_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_with_starved_budget_exits_3() {
    let out = run(&["verify", "--budget", "3", "--check", "remark-p3-c8"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checks"][0]["passed"], true);
    assert!(!v["checks"][0]["inconclusive"].as_array().unwrap().is_empty());
}

#[test]
fn verify_runs_selected_checks_on_a_corpus_file() {
    let dir = std::env::temp_dir().join("psi-lab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corpus.g6");
    std::fs::write(&path, ">>graph6<<\nBg\nBw\nA_\n").unwrap();

    let out = run(&[
        "verify",
        "--corpus",
        path.to_str().unwrap(),
        "--check",
        "lemma-2-upper-bound",
        "--check",
        "remark-p3-c8",
    ]);
    let v = json_of(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
    assert_eq!(v["corpus_size"], 3);
}

#[test]
fn graph6_of_the_cycle_matches_emit() {
    // Sanity for the literal used elsewhere in these tests.
    let out = run(&["nabla", "--k", "1", "GhCGKC"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "GhCGKC");
}

//! Behavior of the `qaskey` binary: exit codes, output formats, report
//! determinism.

use std::process::{Command, Output};

fn qaskey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qaskey"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn eval_hermite_known_value() {
    let out = qaskey(&["eval", "--family", "hermite", "--n", "1", "--z", "2", "--q", "0.5"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("1.5000000000000000e0"), "{stdout}");
}

#[test]
fn eval_reports_representation_agreement() {
    let out = qaskey(&[
        "eval", "--family", "aw", "--n", "2", "--q", "0.4",
        "--params", "0.2;0.3;0.4;0.5", "--z", "1.3",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("representation-agreement"), "{stdout}");
}

#[test]
fn invalid_config_exits_two() {
    // Askey–Wilson degree bound violated: |qabcd| >= |q|^{2N}
    let out = qaskey(&[
        "gram", "--family", "aw", "--q", "0.5",
        "--params", "0.5;0.5;0.5;0.5", "--max-degree", "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("admissible"), "{stderr}");
    // wrong arity
    let out = qaskey(&["eval", "--family", "aw", "--n", "1", "--z", "2", "--q", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown flags are a usage error (clap exits 2)
    let out = qaskey(&["eval", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gram_command_passes_and_emits_csv() {
    let out = qaskey(&[
        "--output", "csv",
        "gram", "--family", "hermite", "--q", "0.5", "--max-degree", "3",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("name,defect,tol,pass\n"), "{stdout}");
    // 4x4 entries, one row each plus the header
    assert_eq!(stdout.lines().count(), 17, "{stdout}");
    assert!(!stdout.contains("false"), "{stdout}");
}

#[test]
fn suite_json_is_byte_identical_across_runs() {
    let args = ["--output", "json", "suite", "--seed", "42", "--only", "qgamma"];
    let a = qaskey(&args);
    let b = qaskey(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["meta"]["seed"], 42);
    assert!(!v["checks"].as_array().unwrap().is_empty());
    assert_eq!(v["summary"]["total"], v["summary"]["passed"]);
    // numerics are serialized as strings
    assert!(v["summary"]["worst_defect"].is_string());
    assert!(v["checks"][0]["defect"].is_string());
}

#[test]
fn suite_only_filters_groups() {
    let out = qaskey(&["--output", "csv", "suite", "--only", "fourier"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 4, "{stdout}"); // header + 3 records
    assert!(stdout.contains("fourier-pair-1"));
}

#[test]
fn beta_and_qbeta_commands() {
    let out = qaskey(&["beta", "--params", "0.1;0.2;0.3;0.4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = qaskey(&["qbeta", "--q", "0.4", "--params", "0.2;0.3;0.4;0.5"]);
    assert!(out.status.success());
    // constraint violation: |abcd| >= 1/q
    let out = qaskey(&["qbeta", "--q", "0.4", "--params", "1.3;1.3;1.3;1.3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn max_terms_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_qaskey"))
        .env("QASKEY_MAX_TERMS", "8")
        .args(["mass", "--q", "0.5", "--params", "0.1;0.2;0.3;0.4"])
        .output()
        .unwrap();
    // max_terms below the context minimum is an invalid configuration
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_qaskey"))
        .env("QASKEY_MAX_TERMS", "50000")
        .args(["mass", "--q", "0.5", "--params", "0.1;0.2;0.3;0.4"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

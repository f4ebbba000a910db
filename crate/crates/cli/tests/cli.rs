use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfdiff")).args(args).env_remove("HOPFDIFF_DEFAULT_TRUNC").output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap().trim_end().to_string()
}

#[test]
fn computes_basic_structure_maps() {
    assert_eq!(stdout(&["compute", "antipode", "a2"]), "-a2 + 2 a1*a1");
    assert_eq!(stdout(&["compute", "antipode", "a3"]), "-a3 + 3 a2*a1 + 2 a1*a2 - 5 a1*a1*a1");
    assert_eq!(stdout(&["compute", "delta", "--n", "2", "a2"]), "2 (a1 ⊗ a1)");
    assert_eq!(stdout(&["--family", "K", "compute", "delta", "--n", "3", "a6"]), "15 (a2 ⊗ a2 ⊗ a2)");
    assert_eq!(stdout(&["compute", "cobracket", "--which", "star", "x5"]), "3 (x4 ∧ x1)");
}

#[test]
fn computes_deformations() {
    assert_eq!(stdout(&["compute", "coproduct", "--kind", "rees-vee", "x2"]), "(x2 ⊗ 1) + 2 h (x1 ⊗ x1) + (1 ⊗ x2)");
    assert_eq!(stdout(&["compute", "poisson", "--kind", "vee-prime", "x1", "x2"]), "β[x1,x2]");
    assert_eq!(stdout(&["compute", "specialize", "--kind", "vee-prime", "--at", "0", "x1"]), "(β1 ⊗ 1) + (1 ⊗ β1)");
}

#[test]
fn series_commands() {
    assert_eq!(stdout(&["compute", "compose", "x + x^2", "x + x^2"]), "x + 2 x^2 + 2 x^3 + x^4");
    assert_eq!(stdout(&["compute", "invert", "--bound", "4", "x + x^2"]), "x - x^2 + 2 x^3 - 5 x^4 + 14 x^5");
    assert_eq!(stdout(&["compute", "pair", "a1 a1", "x + 2 x^2"]), "4");
}

#[test]
fn json_output_is_valid() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "compute", "antipode", "a2"])).unwrap();
    assert_eq!(v["trunc"], 8);
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "verify", "lemma41"])).unwrap();
    assert_eq!(v["suite"], "lemma41");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn verify_passes_and_reports() {
    let out = stdout(&["verify", "q-identities"]);
    assert!(out.starts_with("suite q-identities"));
    assert!(out.contains("[pass] q-at-ones"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["compute", "antipode", "a1 +"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--trunc", "2", "compute", "antipode", "a3"]).status.code(), Some(1));
}

#[test]
fn truncation_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_hopfdiff"))
        .args(["compute", "antipode", "a3"])
        .env("HOPFDIFF_DEFAULT_TRUNC", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

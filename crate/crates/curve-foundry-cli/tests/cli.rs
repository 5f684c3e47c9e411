use std::path::PathBuf;
use std::process::Command;

use curve_foundry_cli::{run, CommandOutcome, EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION};
use serde_json::Value;

fn cf(args: &[&str]) -> CommandOutcome {
    run(std::iter::once("curve-foundry").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = cf(&full);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("stdout is json")
}

fn temp_config(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("cf-{}-{name}.conf", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn exit_codes() {
    assert_eq!(cf(&["--help"]).code, EXIT_OK);
    assert_eq!(cf(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(cf(&["families", "show", "NoSuchFamily"]).code, EXIT_USAGE);
    assert_eq!(cf(&["estimate", "--q-bits", "lots", "--k", "12"]).code, EXIT_USAGE);
    assert_eq!(cf(&["families", "validate", "BN"]).code, EXIT_OK);
    assert_eq!(cf(&["families", "validate", "--all"]).code, EXIT_OK);
    let starved = cf(&["generate", "--family", "BN", "--r-bits", "200", "--budget", "1"]);
    assert_eq!(starved.code, EXIT_BUDGET);
    assert_ne!(EXIT_VALIDATION, EXIT_BUDGET);
}

#[test]
fn generate_bn_smallest_seed() {
    let v = json(&["generate", "--family", "BN", "--r-bits", "8"]);
    let inst = v["instances"].as_array().unwrap();
    let u1 = inst.iter().find(|i| i["seed"] == "1").expect("u = 1 present");
    assert_eq!(u1["q"], "103");
    assert_eq!(u1["r_prime"], "97");
    assert_eq!(u1["t"], "7");
    assert_eq!(u1["D"], "3");
    assert_eq!(u1["y"], "11");
}

#[test]
fn verify_round_trip() {
    for args in [
        ["generate", "--family", "BLS12", "--r-bits", "16"].as_slice(),
        ["construct", "cocks-pinch", "--k", "6", "--D", "3", "--r", "13"].as_slice(),
        ["construct", "mnt", "--k", "6", "--d-max", "20", "--y-bound", "10"].as_slice(),
    ] {
        let mut full = vec!["--verify"];
        full.extend_from_slice(args);
        let out = cf(&full);
        assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    }
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--format", "json", "generate", "--family", "KSS18", "--r-bits", "32"];
    let a = cf(&args);
    let b = cf(&args);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    let args = ["--format", "json", "--seed", "7", "demo", "mov", "--q", "43", "--r", "13", "--k", "6"];
    assert_eq!(cf(&args).stdout, cf(&args).stdout);
}

#[test]
fn estimate_special_k12() {
    let v = json(&["estimate", "--q-bits", "256", "--k", "12", "--special"]);
    let r = &v["report"];
    assert_eq!(r["limiting"], "SexTNFS");
    let overall = r["overall"].as_f64().unwrap();
    assert!((overall - 110.0).abs() <= 1.0, "{overall}");
}

#[test]
fn reproduce_tables() {
    let out = cf(&["reproduce", "table10"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("16 of 16 cells"));
    for t in ["table11", "table12"] {
        let v = json(&["reproduce", t]);
        let rows = v.as_array().unwrap();
        assert!(rows.iter().all(|r| r["status"] != "fail"), "{t}");
        assert!(rows.iter().any(|r| r["status"] == "pass"), "{t}");
    }
}

#[test]
fn constructions() {
    let v = json(&["construct", "cocks-pinch", "--k", "6", "--D", "3", "--r", "13"]);
    assert_eq!(v[0]["q"], "43");
    let v = json(&["construct", "freeman", "--D", "43"]);
    assert!(v.as_array().unwrap().iter().any(|i| i["q"] == "283" && i["r_prime"] == "251"));
    let v = json(&["demo", "mov", "--q", "43", "--r", "13", "--k", "6", "--challenges", "5"]);
    assert_eq!(v["all_agree"], true);
}

#[test]
fn config_file_precedence() {
    let p = temp_config("budget", "budget = 1\n");
    let ps = p.to_str().unwrap();
    let base = ["--config", ps, "generate", "--family", "BN", "--r-bits", "200"];
    assert_eq!(cf(&base).code, EXIT_BUDGET);
    let mut flagged = base.to_vec();
    flagged.extend_from_slice(&["--budget", "5000"]);
    assert_eq!(cf(&flagged).code, EXIT_OK);

    let bad = temp_config("bad", "colour = red\n");
    assert_eq!(cf(&["--config", bad.to_str().unwrap(), "families", "list"]).code, EXIT_USAGE);
    let _ = std::fs::remove_file(p);
    let _ = std::fs::remove_file(bad);
}

#[test]
fn config_from_environment() {
    let p = temp_config("env", "format = json\n");
    let out = Command::new(env!("CARGO_BIN_EXE_curve-foundry"))
        .args(["families", "show", "BN"])
        .env(curve_foundry_cli::config::ENV_VAR, &p)
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).expect("env config selected json");
    assert!(v.to_string().contains("BN"));
    let out = Command::new(env!("CARGO_BIN_EXE_curve-foundry"))
        .args(["--format", "table", "families", "show", "BN"])
        .env(curve_foundry_cli::config::ENV_VAR, &p)
        .output()
        .unwrap();
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_err());
    let _ = std::fs::remove_file(p);
}

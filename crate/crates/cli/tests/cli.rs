use serde_json::Value;
use std::process::Command;

fn hyperleg(args: &[&str]) -> (i32, Vec<Value>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperleg")).args(args).output().expect("binary runs");
    let reports = String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect();
    (out.status.code().unwrap_or(-1), reports, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn strip_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

#[test]
fn th1_passes_with_schema_one() {
    let (code, reps, _) = hyperleg(&["verify-th1", "--n-max", "40"]);
    assert_eq!(code, 0);
    assert_eq!(reps.len(), 1);
    assert_eq!(reps[0]["schema"], 1);
    assert_eq!(reps[0]["check"], "verify-th1");
    assert_eq!(reps[0]["status"], "pass");
    assert_eq!(reps[0]["config"]["precision_bits"], 256);
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify-humbert", "--u", "1/2", "--x", "1", "--samples", "2", "--seed", "9", "--precision-bits", "128"];
    let (c1, a, _) = hyperleg(&args);
    let (c2, b, _) = hyperleg(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a.into_iter().map(strip_time).collect::<Vec<_>>(), b.into_iter().map(strip_time).collect::<Vec<_>>());
}

#[test]
fn exit_codes() {
    let (code, reps, _) = hyperleg(&["braid-orbit", "--seed", "zeta8", "--bound", "5"]);
    assert_eq!(code, 2);
    assert_eq!(reps[0]["status"], "inconclusive");
    let (code, reps, _) = hyperleg(&["braid-orbit", "--seed", "zeta5"]);
    assert_eq!(code, 0);
    assert_eq!(reps[0]["details"]["size"], 48);
    let (code, reps, _) = hyperleg(&["verify-f4", "--a", "1/4", "--b", "3/4", "--c1", "1", "--c2", "2"]);
    assert_eq!(code, 1);
    assert!(reps[0]["details"]["error"].as_str().unwrap().contains("c1 + c2"));
    let (code, _, err) = hyperleg(&["verify-nothing"]);
    assert_eq!(code, 2);
    assert!(err.contains("unrecognized subcommand"));
    let (code, _, err) = hyperleg(&["verify-wan", "--tolerance-exp", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("tolerance-exp"));
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("out.jsonl");
    std::fs::write(&cfg, "precision_bits = 192\nsearch_depth = 10\n").unwrap();
    let (code, _, _) = hyperleg(&[
        "verify-density",
        "--config",
        cfg.to_str().unwrap(),
        "--search-depth",
        "12",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let rep: Value = serde_json::from_str(std::fs::read_to_string(&out).unwrap().trim()).unwrap();
    assert_eq!(rep["config"]["precision_bits"], 192);
    assert_eq!(rep["config"]["search_depth"], 12);
    assert_eq!(rep["details"]["u_length"], 8);
}

#[test]
fn floats_are_decimal_strings() {
    let (code, reps, _) = hyperleg(&["verify-teich", "--t", "3"]);
    assert_eq!(code, 0);
    assert!(reps[0]["details"]["ode_residual_log10"].is_string());
}

mod common;

use common::{payload_bytes, run, run_ok, COMMANDS};
use serde_json::Value;

fn payload(args: &[&str]) -> Value {
    let env: Value = serde_json::from_str(&run_ok(args)).unwrap();
    assert_eq!(env["command"].as_str().unwrap().split(' ').next(), args.iter().find(|a| !a.starts_with('-')).copied());
    env
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn field_reports() {
    let e = payload(&["field", "-d", "5"]);
    assert_eq!(e["payload"]["kind"], "field");
    assert_eq!(e["payload"]["class_data"]["h_plus"], 1);
    assert_eq!(e["payload"]["fundamental_unit"], serde_json::json!({"d": 5, "a": "1/2", "b": "1/2"}));
    assert_eq!(payload(&["field", "-d", "-5"])["payload"]["class_data"]["h"], 2);
    let rows = payload(&["field", "-d", "0"])["payload"]["splitting"].as_array().unwrap().len();
    assert_eq!(rows, 15);
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&["field", "-d", "12"]), 2);
    assert!(String::from_utf8_lossy(&run(&["field", "-d", "12"]).stderr).contains("NotSquarefree"));
    assert_eq!(exit_code(&["frey", "2", "2", "1", "0", "5"]), 2);
    assert_eq!(exit_code(&["frey", "2", "1", "1", "14", "5"]), 2);
    assert_eq!(exit_code(&["sunit", "-d", "5", "--primes", "2", "--bound", "50", "--enumeration-ceiling", "10"]), 1);
    assert_eq!(exit_code(&["check", "theorem-b", "--degree", "4", "--ramified", "2"]), 1);
    assert_eq!(exit_code(&["field", "-d", "5", "--discriminant-bound", "0"]), 2);
    assert_eq!(exit_code(&["no-such-command"]), 2);
}

#[test]
fn sunit_reports() {
    let e = payload(&["sunit", "-d", "0", "--primes", "2", "--bound", "30"]);
    assert_eq!((e["payload"]["solution_count"].as_u64(), e["payload"]["orbit_count"].as_u64()), (Some(3), Some(1)));
    let six = payload(&["sunit", "-d", "5", "--primes", "2", "--bound", "6"]);
    let lambdas: Vec<&Value> = six["payload"]["solutions"].as_array().unwrap().iter().map(|s| &s["solution"]["lambda"]).collect();
    // ε² = (3 + √5)/2
    assert!(lambdas.contains(&&serde_json::json!({"d": 5, "a": "3/2", "b": "1/2"})));
    let zero = payload(&["sunit", "-d", "5", "--primes", "2", "--bound", "0"]);
    for s in zero["payload"]["solutions"].as_array().unwrap() {
        assert!(lambdas.contains(&&s["solution"]["lambda"]));
    }
}

#[test]
fn frey_reports() {
    let e = payload(&["frey", "5", "3", "2", "17", "5"]);
    assert_eq!(e["payload"]["invariants"]["j"]["a"], "20346417/289");
    assert_eq!(e["payload"]["lambda_j_agrees"], true);
    let notices = e["discrepancy_notices"].as_array().unwrap();
    assert!(notices.iter().any(|n| n.as_str().unwrap().starts_with("ord(j) at 2")));
    let e = payload(&["frey", "1", "0", "1", "1", "5"]);
    assert_eq!(e["payload"]["invariants"]["j"]["a"], "1728");
    assert_eq!(e["payload"]["triple"]["trivial"], true);
    let e = payload(&["frey", "1+sqrt(-1)", "1", "-1", "5", "5", "-d", "-1"]);
    assert_eq!(e["payload"]["triple"]["field"], -1);
}

#[test]
fn check_reports() {
    let status = |args: &[&str]| payload(args)["payload"]["verdicts"][0]["status"].as_str().unwrap().to_owned();
    assert_eq!(status(&["check", "corollary-quadratic", "-d", "21", "-l", "29", "--alpha", "3"]), "holds");
    assert_eq!(status(&["check", "corollary-quadratic", "-d", "13", "-l", "29"]), "fails");
    assert_eq!(status(&["check", "q24", "-q", "97"]), "holds");
    assert_eq!(status(&["check", "q24", "-q", "97", "--bound", "2"]), "holds_at_bound");
    assert_eq!(status(&["check", "corollary-ramified", "-d", "2", "-p", "7"]), "not_applicable");
    let z = payload(&["check", "z2-layer", "-r", "1"]);
    assert_eq!(z["payload"]["verdicts"][0]["printed_alpha_exclusions"], serde_json::json!([2]));
    assert_eq!(z["payload"]["verdicts"][0]["alpha_exclusions"], serde_json::json!([8]));
    let t = payload(&["check", "trace", "-d", "5", "--bound", "3"]);
    assert_eq!(t["payload"]["kind"], "trace");
    assert!(t["payload"]["traces"].as_array().unwrap().iter().all(|x| x["record"]["bound_holds"] == true));
}

#[test]
fn density_csv_and_json() {
    let csv = run_ok(&["--format", "csv", "density", "--cutoff", "30"]);
    assert!(csv.starts_with("record,key,count,fraction,relevant_solution\n"));
    assert!(csv.contains("total,,18,,\n"));
    let e = payload(&["density", "--cutoff", "1000000"]);
    let f: Vec<u64> = e["payload"]["projected_d"].as_str().unwrap().split('/').map(|x| x.parse().unwrap()).collect();
    assert!((f[0] as f64 / f[1] as f64 - 5.0 / 6.0).abs() < 0.002);
}

#[test]
fn config_file_and_env_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"exponent_bound": 4, "output_format": "text"}"#).unwrap();
    let out = run_ok(&["--config", cfg.to_str().unwrap(), "sunit", "-d", "0", "--primes", "2"]);
    assert!(out.starts_with("command: sunit\n") && out.contains("bound = 4\n"));
    std::fs::write(&cfg, r#"{"exponent_bound": 4, "extra": true}"#).unwrap();
    assert_eq!(exit_code(&["--config", cfg.to_str().unwrap(), "field", "-d", "5"]), 2);

    let cache = dir.path().join("env-cache.jsonl");
    let via_env = |args: &[&str]| {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_quartic"))
            .args(args)
            .env("QUARTIC_CACHE", &cache)
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let first = via_env(&["field", "-d", "13"]);
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 1);
    let second = via_env(&["field", "-d", "13"]);
    assert_eq!(payload_bytes(&first), payload_bytes(&second));
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 1);
    let _ = via_env(&["--no-cache", "field", "-d", "17"]);
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 1);
}

#[test]
fn repeated_runs_are_identical() {
    for args in COMMANDS.iter().take(6) {
        assert_eq!(payload_bytes(&run_ok(args)), payload_bytes(&run_ok(args)), "{args:?}");
    }
}

//! Black-box tests of the command-line binary: exit codes, JSON
//! round-trips, and byte-for-byte determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chamber-walks"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn count_examples() {
    let out = run(&["count", "--model", "randomturns", "--from", "0,1", "--to", "0,1", "-n", "2", "--method", "both"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("count = 2"));
    assert!(text.contains("agree = true"));

    let out = run(&["count", "--model", "lockstep", "--from", "0,2", "--to", "0,2", "-n", "2", "--method", "reflection"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("count = 3"));

    // parity-unreachable endpoint: success with a zero count
    let out = run(&["count", "--model", "lockstep", "--from", "0,1", "--to", "0,1", "-n", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("count = 0"));
}

#[test]
fn exit_codes() {
    // parse failures → 1
    assert_eq!(run(&["count", "--model", "lockstep", "--from", "0,x", "--to", "0,2", "-n", "2"]).status.code(), Some(1));
    assert_eq!(run(&["count", "--model", "hexagonal", "--from", "0,2", "--to", "0,2", "-n", "2"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["convergence", "--model", "lockstep", "--from", "0,2", "--to", "0,2", "--n-list", ""]).status.code(), Some(1));
    assert_eq!(run(&["--precision", "10", "count", "--model", "lockstep", "--from", "0,2", "--to", "0,2", "-n", "2"]).status.code(), Some(1));
    // domain failures → 2
    assert_eq!(run(&["count", "--model", "lockstep", "--from", "2,1", "--to", "0,2", "-n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["asympt", "--model", "lockstep", "--from", "0,2", "--to", "0,2", "-n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["selberg", "--weight", "laguerre:-0.5", "-k", "2"]).status.code(), Some(2));
    // help → 0
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_round_trip() {
    let out = run(&["count", "--model", "lockstep", "--from", "0,2", "--to", "0,2", "-n", "20", "--method", "both", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "count");
    assert_eq!(v["params"]["n"], 20);
    // counts are decimal strings, not JSON numbers
    assert!(v["results"]["count"].is_string());
    assert_eq!(v["results"]["count"], v["results"]["count_dp"]);
    assert_eq!(v["results"]["agree"], true);
    let reparsed: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, reparsed);
}

#[test]
fn deterministic_output() {
    let args = ["convergence", "--model", "randomturns", "--from", "0,1", "--to", "0,1", "--n-list", "64,128,256", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn convergence_csv_shape() {
    let out = run(&["convergence", "--model", "lockstep", "--from", "0,2", "--to", "0,2", "--n-ladder", "64:2:4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,exact,log_estimate,rel_error");
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "64");
    assert!(text.lines().last().unwrap().starts_with("# slope,"));

    // a single n emits a row but no slope line
    let out = run(&["convergence", "--model", "lockstep", "--from", "0,2", "--to", "0,2", "--n-list", "64"]);
    assert!(out.status.success());
    assert!(!stdout(&out).contains("slope"));
}

#[test]
fn asympt_orders_improve() {
    let get_err = |order: &str| -> f64 {
        let out = run(&["asympt", "--model", "lockstep", "--from", "0,2", "--to", "0,2", "-n", "1000", "--order", order, "--with-exact", "--json"]);
        assert!(out.status.success());
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        v["results"]["rel_error"].as_f64().unwrap()
    };
    let e1 = get_err("1");
    let e2 = get_err("2");
    assert!(e2 < 1e-2);
    assert!(e2 <= e1);
}

#[test]
fn expand_and_selberg_examples() {
    let out = run(&["expand", "--f", "exp_i", "--u", "1,2", "--degree", "4", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["identical"], true);

    let out = run(&["expand", "--f", "poly:1,1/2,1/3", "--u", "1/2,-1/3", "--degree", "2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["identical"], true);

    let out = run(&["selberg", "--weight", "hermite", "-k", "2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let closed = v["results"]["closed_form_value"].as_f64().unwrap();
    assert!((closed - 4.0 * std::f64::consts::PI).abs() < 1e-10);
    assert!(v["results"]["deviation"].as_f64().unwrap() < 1e-10);

    let out = run(&["selberg", "--weight", "laguerre:0.5", "-k", "2", "--moment", "sum", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["results"]["ratio"], "3");
    assert!(v["results"]["deviation"].as_f64().unwrap() < 1e-9);
}

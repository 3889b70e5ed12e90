use std::process::Command;

use serde_json::Value;

fn drds(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_drds"))
        .args(args)
        .env("DRDS_THREADS", "2")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out) = drds(args);
    (code, serde_json::from_str(&out).expect("valid json"))
}

#[test]
fn simulate_tail_of_second_order_equation() {
    let (code, v) = json(&["simulate", "--eq", "x[n+1] = (1+x[n])/(1+x[n-1])", "--init", "2,3", "--steps", "200"]);
    assert_eq!(code, 0);
    let tail = v["result"]["tail"].as_array().unwrap();
    assert_eq!(tail.len(), 2);
    for t in tail {
        assert!((t.as_f64().unwrap() - 1.0).abs() < 1e-12);
    }
    assert_eq!(v["schema"], "drds-report/1");
}

#[test]
fn exact_simulation_matches_hand_iteration() {
    let (code, v) = json(&["simulate", "--eq", "x[n+1] = (1+x[n])/x[n-1]", "--init", "1,2", "--steps", "3", "--mode", "exact", "--tail", "3"]);
    assert_eq!(code, 0);
    // 1, 2, 3, 2, 1
    let got: Vec<&str> = v["result"]["tail"].as_array().unwrap().iter().map(|t| t["exact"].as_str().unwrap()).collect();
    assert_eq!(got, ["3", "2", "1"]);
}

#[test]
fn output_is_deterministic() {
    let args = ["al-conjecture", "--id", "3", "--starts", "8", "--init", "1,2,3"];
    let strip = |s: String| s.lines().filter(|l| !l.contains("timing_ms")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(drds(&args).1), strip(drds(&args).1));
}

#[test]
fn exit_codes() {
    assert_eq!(drds(&["parse-check", "--map", "y, (1+y)/x"]).0, 0);
    assert_eq!(drds(&["prove-gs", "--map", "y, (1+x+y)/3", "--max-r", "0"]).0, 1);
    assert_eq!(drds(&["prove-gs", "--eq", "x[n+1] = (1+x[n])/(1+x[n-1])"]).0, 0);
    assert_eq!(drds(&["al-conjecture", "--id", "1", "--mode", "rigorous"]).0, 0);
    assert_eq!(drds(&["al-conjecture", "--id", "1", "--starts", "8"]).0, 2);
    assert_eq!(drds(&["al-conjecture", "--id", "1", "--norm", "simple", "--a", "0", "--b", "4", "--starts", "8"]).0, 0);
    assert_eq!(drds(&["al-conjecture", "--id", "2", "--mode", "rigorous"]).0, 1);
    assert_eq!(drds(&["invariant", "--eq", "x[n+1] = x[n]+x[n-1]"]).0, 2);
    assert_eq!(drds(&["simulate"]).0, 1);
    assert_eq!(drds(&["no-such-command"]).0, 1);
    assert_eq!(drds(&["--help"]).0, 0);
}

#[test]
fn errors_are_structured() {
    let (code, v) = json(&["simulate", "--eq", "x[n+1] = (1+x[n]/x[n-1]", "--init", "1,2"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "Parse");
    assert!(v["result"].is_null());
}

#[test]
fn floats_carry_seventeen_digits() {
    let (_, out) = drds(&["equilibria", "--eq", "x[n+1] = (1+x[n])/x[n-1]"]);
    assert!(out.contains("1.6180339887498949e0"), "{out}");
}

#[test]
fn text_format_uses_ten_digits() {
    let (code, out) = drds(&["equilibria", "--eq", "x[n+1] = (1+x[n])/x[n-1]", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("value: 1.618033989"), "{out}");
}

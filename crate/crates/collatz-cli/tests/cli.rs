//! End-to-end checks of the CLI surface: exit codes, known outputs, and
//! print/re-parse round-trips.

use std::process::{Command, Output};

fn collatz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_collatz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

#[test]
fn orbit_finds_cycles_and_reports_budget() {
    let out = collatz(&["orbit", "--ring", "F2", "--poly", "[1,1]"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("preperiod: 2"), "{text}");
    assert!(text.contains("cycle length: 2"), "{text}");

    let out = collatz(&["orbit", "--ring", "Z", "--poly", "[1,1]", "--budget", "10"]);
    assert_eq!(exit_code(&out), 2);

    let out = collatz(&["orbit", "--ring", "Z/4", "--poly", "[2]"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("cycle length: 2"));
}

#[test]
fn parse_errors_exit_one() {
    let out = collatz(&["orbit", "--ring", "Q/4", "--poly", "[1]"]);
    assert_eq!(exit_code(&out), 1);
    let out = collatz(&["orbit", "--ring", "F2", "--poly", "1,1"]);
    assert_eq!(exit_code(&out), 1);
    let out = collatz(&["frobnicate"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn count_tables_plain_and_csv() {
    let out = collatz(&["count", "z2", "--n", "1..5", "--csv"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "n,count\n1,1\n2,1\n3,1\n4,1\n5,2\n");

    let out = collatz(&["count", "series", "--q", "4", "--n", "3"]);
    assert_eq!(stdout(&out).trim(), "n=3: 3");

    let out = collatz(&["count", "series", "--q", "4", "--n", "1..3", "--csv"]);
    assert_eq!(stdout(&out), "n,e,j,i,Z\n1,4,1,1,1\n2,7,7,6,3\n3,19,10,9,3\n");

    let out = collatz(&["count", "fq", "--q", "3", "--k", "1", "--verify"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("2 (verified)"));

    let out = collatz(&["count", "z2", "--n", "1..6", "--condensed", "--csv"]);
    assert_eq!(stdout(&out), "n,count\n1,2\n2,1\n3,2\n4,3\n5,6\n6,9\n");
}

#[test]
fn census_tables() {
    let out = collatz(&["census", "--ring", "F3", "--max-deg", "3", "--csv"]);
    assert_eq!(stdout(&out), "length,count\n1,1\n2,2\n6,2\n");

    let out = collatz(&["census", "--ring", "F3", "--matrix", "--k", "2", "--csv"]);
    assert_eq!(stdout(&out), "length,count\n2,2\n6,2\n18,56\n");
}

#[test]
fn construct_checks_density_and_roundtrips() {
    let out = collatz(&["construct", "z2", "--bits", "1000"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("1/5\n"), "{text}");
    assert!(text.contains("length 4"), "{text}");

    let out = collatz(&["construct", "z2", "--bits", "11"]);
    assert_eq!(exit_code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("--condensed"), "{err}");

    let out = collatz(&["construct", "z2", "--bits", "11", "--condensed"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).starts_with("-1\n"));

    let out = collatz(&[
        "construct", "series", "--ring", "F2", "--vec", "[1,0]", "--condensed",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("u = [1], v = [1,1]"), "{text}");
    assert!(text.contains("matches"), "{text}");
}

#[test]
fn printed_polynomials_reparse() {
    // orbit cycle members, printed as [..], feed back through --poly
    let out = collatz(&["orbit", "--ring", "F3", "--poly", "[1,0,1]", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["preperiod"], 0);
    let cycle = v["cycle"].as_array().unwrap();
    assert_eq!(cycle.len(), 6);
    let first = serde_json::to_string(&cycle[0]).unwrap().replace(' ', "");
    let out2 = collatz(&["orbit", "--ring", "F3", "--poly", &first, "--json"]);
    let v2: serde_json::Value = serde_json::from_str(&stdout(&out2)).unwrap();
    assert_eq!(v2["cycle"], v["cycle"]);
}

#[test]
fn parity_and_valuation_values() {
    let out = collatz(&["parity", "--z2", "1/5", "-n", "8"]);
    assert_eq!(stdout(&out).trim(), "10001000");

    let out = collatz(&["valuation", "vp", "-p", "2", "-n", "12"]);
    assert_eq!(stdout(&out).trim(), "2");
    let out = collatz(&["valuation", "binom", "-p", "2", "-n", "4", "-m", "2"]);
    assert_eq!(stdout(&out).trim(), "1");
    let out = collatz(&["valuation", "threshold", "--modulus", "12", "-n", "3"]);
    assert_eq!(stdout(&out).trim(), "72");
    let out = collatz(&["valuation", "equiv", "--modulus", "4", "-n", "1", "-k", "4"]);
    assert!(stdout(&out).contains("true"));
    // precondition failure
    let out = collatz(&["valuation", "shortcut", "-p", "2", "-a", "6", "-n", "4"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn verify_exit_codes() {
    let out = collatz(&["verify", "asymptotics"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("PASS"));

    let out = collatz(&["verify", "nosuchsuite"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn budget_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_collatz"))
        .args(["orbit", "--ring", "Z", "--poly", "[1,1]"])
        .env("COLLATZ_WORK_BUDGET", "7")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("budget 7"));
}

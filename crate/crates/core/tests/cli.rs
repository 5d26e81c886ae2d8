use std::path::PathBuf;
use std::process::{Command, Output};

use ppdim::io::module_from_invariants;

fn ppdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ppdim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn ppdim_of_m3_at_five() {
    let o = ppdim(&["ppdim", "--p", "5", "--invariants", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn size_at_seven() {
    let o = ppdim(&["size", "--p", "7", "--x", "4"]);
    assert_eq!(stdout(&o), "5\n");
}

#[test]
fn resolve_m2_at_three_with_check() {
    let o = ppdim(&["resolve", "--p", "3", "--invariants", "2", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["length"], 1);
    assert_eq!(v["check"], true);
    assert_eq!(v["terms"], serde_json::json!([[3], [1]]));
}

#[test]
fn non_prime_is_an_input_error() {
    let o = ppdim(&["ppdim", "--p", "4", "--invariants", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("p must be prime"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn out_of_range_invariant_is_an_input_error() {
    let o = ppdim(&["decompose", "--p", "3", "--invariants", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("out of range"));
}

#[test]
fn non_nilpotent_matrix_file() {
    let path = scratch("bad_matrix.json", "[[0,0,0],[1,0,0],[0,1,0]]");
    let o = ppdim(&[
        "decompose",
        "--p",
        "2",
        "--matrix-file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a k[T]/T^p module"));
}

#[test]
fn module_file_and_decompose() {
    let path = scratch("m.json", r#"{"p": 3, "matrix": [[0,0,0],[1,0,0],[0,0,0]]}"#);
    let o = ppdim(&["decompose", "--module", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "2,1\n");
    let o = ppdim(&[
        "--format",
        "json",
        "decompose",
        "--module",
        path.to_str().unwrap(),
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"p": 3, "invariants": [2, 1]}));
}

#[test]
fn resolve_terms_round_trip_through_decompose() {
    let o = ppdim(&["resolve", "--p", "7", "--invariants", "4,3,2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for term in v["terms"].as_array().unwrap() {
        let parts: Vec<usize> = serde_json::from_value(term.clone()).unwrap();
        let m = module_from_invariants(7, &parts).unwrap();
        assert!(m.decompose().parts().iter().all(|&c| c == 1 || c == 7));
    }
    assert!(v.get("check").is_none());
}

#[test]
fn resolve_refuses_large_primes() {
    let o = ppdim(&["resolve", "--p", "101", "--invariants", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("p <= 97"));
}

#[test]
fn chain_text_and_dot() {
    assert_eq!(stdout(&ppdim(&["chain", "--p", "5"])), "1 - 4 - 2 - 3\n");
    let dot = stdout(&ppdim(&["chain", "--p", "5", "--dot"]));
    assert!(dot.starts_with("graph chain_p5 {"));
    assert!(dot.contains("n2 -- n3;"));
}

#[test]
fn oracle_agrees_on_m2_at_five() {
    let o = ppdim(&[
        "--format",
        "json",
        "oracle",
        "--p",
        "5",
        "--invariants",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 2);
    assert_eq!(v["search"]["value"], 2);
    assert_eq!(v["search"]["certification"], "within_budget");
    assert_eq!(v["agree"], true);
}

#[test]
fn oracle_budget_overrun_fails() {
    let o = ppdim(&["oracle", "--p", "5", "--invariants", "3", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("budget"));
}

#[test]
fn verify_suites_pass_and_are_deterministic() {
    for suite in ["lemma34", "lemma35", "thm38"] {
        let o = ppdim(&["verify", "--suite", suite, "--p", "3"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stderr(&o));
    }
    let args = [
        "--format", "json", "verify", "--suite", "prop37", "--seed", "9", "--p", "3,5", "--trials",
        "200",
    ];
    let a = ppdim(&args);
    let b = ppdim(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v[0]["violations"], 0);
    assert_eq!(v[1]["trials_attempted"], 200);
    assert!(v[0]["hypothesis"]
        .as_str()
        .unwrap()
        .contains("direct summand"));
}

#[test]
fn missing_module_source() {
    let o = ppdim(&["ppdim", "--p", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

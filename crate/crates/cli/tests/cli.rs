use std::path::Path;
use std::process::{Command, Output};

const FLYNN_1: &str = "x^6 + 2*x^5 + 5*x^4 + 2*x^3 + 2*x^2 + 1";

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cftorsion")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn order_of_flynn() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["order", FLYNN_1, "--genus", "2"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "11");
}

#[test]
fn order_budget_exceeded() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["order", "x^6 + x + 3", "--genus", "2", "--max-steps", "8"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("BudgetExceeded"));
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["order", "x^5 + 1", "--genus", "2"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["expand", "x^^2"], dir.path()).status.code(), Some(2));
}

#[test]
fn expand_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["expand", FLYNN_1, "--json"], dir.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["m"], 7);
    assert_eq!(v["kappa"], "1/4");
}

#[test]
fn partitions_listed() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["partitions", "--genus", "2", "--order", "11"], dir.path());
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("(2,1,1,1,1,2)"));
    assert!(out.contains("(2,1,2,1,2)"));
}

#[test]
fn solve_then_instantiate() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.json");
    let o = run(
        &[
            "solve", "--genus", "2", "--order", "11", "--partition", "2,1,1,1,1,2",
            "--prefer", "b0,k1,r0,r2,l3,k2,r1,c1", "--out", trace.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("FAMILY"));
    let o = run(
        &["instantiate", "--trace", trace.to_str().unwrap(), "--assign", "kappa=2,l2=-2,l1=1/16,k3=0"],
        dir.path(),
    );
    assert!(o.status.success(), "{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("kappa = 2"));
}

#[test]
fn solve_impossible() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["solve", "--genus", "2", "--order", "11", "--partition", "2,1,2,1,2"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("IMPOSSIBLE"));
}

#[test]
fn igusa_flynn() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["igusa", FLYNN_1], dir.path());
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("B = 3268"));
    assert!(out.contains("D = -1445888"));
}

#[test]
fn search_writes_catalog() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("s.toml"), "g = 10\nN = 11\nsamples = 2\nseed = 7\n").unwrap();
    let o = run(&["search", "--config", "s.toml"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let cat = std::fs::read_to_string(dir.path().join("catalog.jsonl")).unwrap();
    assert!(cat.lines().count() >= 1);
    let first = stdout(&o);
    let again = run(&["search", "--config", "s.toml"], dir.path());
    assert_eq!(std::fs::read_to_string(dir.path().join("catalog.jsonl")).unwrap(), cat);
    let digest = |s: &str| s.lines().find(|l| l.starts_with("digest")).map(str::to_string);
    assert_eq!(digest(&first), digest(&stdout(&again)));
    assert!(stdout(&again).contains(" 0 new"));
}

#[test]
fn fixtures_pass() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(&["fixtures"], dir.path()).status.success());
}

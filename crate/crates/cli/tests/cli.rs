use std::path::PathBuf;
use std::process::{Command, Output};

fn rrmo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rrmo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_config(name: &str, json: &str) -> String {
    let path = scratch(name);
    std::fs::write(&path, json).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn eval_prints_fitness() {
    let o = rrmo(&["eval", "rrmo:n=10,m=2", "1111110000"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "6 10");
}

#[test]
fn pareto_lists_three_strings() {
    let o = rrmo(&["pareto", "rrmo:n=10,m=2"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.len() == 10));
}

#[test]
fn pareto_respects_cap() {
    let o = rrmo(&["pareto", "rrmo:n=20,m=4", "--cap", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_small_instance_passes() {
    let o = rrmo(&["verify", "--spec", "rrmo:n=10,m=2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    assert_eq!(rrmo(&["eval", "rrmo:n=11,m=2", "1"]).status.code(), Some(2));
    assert_eq!(rrmo(&["eval", "rrmo:n=10,m=2", "101"]).status.code(), Some(2));
    assert_eq!(rrmo(&["eval", "nope", "101"]).status.code(), Some(2));
    assert_eq!(rrmo(&["frobnicate"]).status.code(), Some(2));
    let bad = write_config("bad.json", r#"{"algorithm":"gsemo"}"#);
    assert_eq!(rrmo(&["run", &bad]).status.code(), Some(2));
}

#[test]
fn refpoints_lists_small_lattices() {
    let o = rrmo(&["refpoints", "3", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("size 6"));
    assert_eq!(lines.count(), 6);
    let o = rrmo(&["refpoints", "4", "576"]);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn run_and_experiment() {
    let cfg = write_config(
        "gsemo.json",
        r#"{"algorithm":"gsemo","spec":"rrmo:n=10,m=2","p_c":0.5,"crossover":"one-point",
            "seeds":{"master":0,"count":5},"budget":100000}"#,
    );
    let o = rrmo(&["run", &cfg, "--seed", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("seed=3 algo=gsemo"));

    let a = scratch("a.csv");
    let b = scratch("b.csv");
    for path in [&a, &b] {
        let o = rrmo(&["experiment", &cfg, "--out", path.to_str().unwrap(), "--require-cover"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    let csv = std::fs::read_to_string(&a).unwrap();
    assert_eq!(csv, std::fs::read_to_string(&b).unwrap());
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn require_cover_fails_on_uncovered_runs() {
    let cfg = write_config(
        "tiny.json",
        r#"{"algorithm":"gsemo","spec":"rrmo:n=35,m=2","p_c":0.0,"crossover":"one-point",
            "seeds":[1],"budget":10}"#,
    );
    let out = scratch("tiny.csv");
    let o = rrmo(&["experiment", &cfg, "--out", out.to_str().unwrap(), "--require-cover"]);
    assert_eq!(o.status.code(), Some(1));
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn ttl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttl"))
        .args(args)
        .env_remove("TTL_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ttl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn parse_prints_canonical_form() {
    let o = ttl(&["parse", "( a|b ) ;c~"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(a | b) ; c~\n");
}

#[test]
fn parse_error_exits_with_two() {
    let o = ttl(&["parse", "a;;"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error"));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(ttl(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        ttl(&["run", "wood", "--map", "/definitely/not/here"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(ttl(&["--help"]).status.code(), Some(0));
}

#[test]
fn infeasible_map_request_exits_with_three() {
    let o = ttl(&["gen-maps", "--formula", "wood", "--objects", "20"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn extract_lists_one_per_line() {
    let o = ttl(&["extract", "wood;(grass|iron~)"]);
    assert_eq!(stdout(&o), "wood grass\nwood iron~\n");
}

#[test]
fn check_reports_verdicts() {
    let trace = scratch("trace.txt");
    std::fs::write(&trace, "wood\n-\ngrass,iron\n").unwrap();
    let o = ttl(&["check", "wood;grass", trace.to_str().unwrap()]);
    assert_eq!(stdout(&o), "ttl true\n");
    let o = ttl(&["check", "grass;wood", trace.to_str().unwrap()]);
    assert_eq!(stdout(&o), "ttl false\n");
}

#[test]
fn translate_uses_the_atoms_as_alphabet() {
    let o = ttl(&["translate", "a;b", "--scheme", "strict"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("p:a") && stdout(&o).contains("p:b"));
}

#[test]
fn run_is_reproducible_and_seed_env_applies() {
    let a = ttl(&["run", "wood;grass", "--seed", "5"]);
    let b = Command::new(env!("CARGO_BIN_EXE_ttl"))
        .args(["run", "wood;grass"])
        .env("TTL_SEED", "5")
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("step,action,label,reward,current_subtask\n"));
    assert!(String::from_utf8_lossy(&a.stderr).starts_with("success=true"));
}

#[test]
fn run_on_saved_map_matches_generated_map() {
    let dir = scratch("maps");
    let o = ttl(&[
        "gen-maps",
        "--formula",
        "wood",
        "--seed",
        "9",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let map = dir.join("map-0000.txt");
    let log = scratch("run.csv");
    let from_file = ttl(&[
        "run",
        "wood",
        "--seed",
        "9",
        "--map",
        map.to_str().unwrap(),
        "--log",
        log.to_str().unwrap(),
    ]);
    let generated = ttl(&["run", "wood", "--seed", "9"]);
    assert_eq!(std::fs::read_to_string(&log).unwrap(), stdout(&generated));
    assert!(stdout(&from_file).starts_with("success=true"));
}

#[test]
fn eval_writes_csv_that_report_reads() {
    let csv = scratch("bcm.csv");
    let o = ttl(&[
        "eval-bcm",
        "--maps",
        "20",
        "--runs",
        "1",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("experiment,agent,instruction,maps,"));
    let o = ttl(&["report", csv.to_str().unwrap(), "--csv"]);
    assert_eq!(stdout(&o), text);
}

#[test]
fn train_then_evaluate_checkpoint() {
    let ck = scratch("agent.ckpt");
    let o = ttl(&[
        "train",
        "--steps",
        "2000",
        "--window",
        "20",
        "--out",
        ck.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("episodes,steps,mean_reward\n"));
    let o = ttl(&[
        "eval-bcm",
        "--agent",
        "a2c",
        "--checkpoint",
        ck.to_str().unwrap(),
        "--maps",
        "10",
        "--runs",
        "1",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("a2c"));
    assert_eq!(ttl(&["eval-bcm", "--agent", "a2c"]).status.code(), Some(1));
}

//! End-to-end checks of the binary's subcommands on tiny benchmarks.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ddccmckp"))
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("spawn ddccmckp");
    assert!(
        out.status.success(),
        "command {:?} failed\nstdout: {}\nstderr: {}",
        args,
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ddccmckp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn gen_tiny(instance: &Path, truth: &Path) {
    run_ok(&[
        "gen",
        "--family", "lab",
        "--m", "3",
        "--n", "4",
        "--l", "10",
        "--t-max", "13",
        "--p0", "0.9",
        "--seed", "5",
        "--out", instance.to_str().unwrap(),
        "--truth-out", truth.to_str().unwrap(),
    ]);
}

#[test]
fn gen_writes_loadable_deterministic_files() {
    let inst = tmp("a.json");
    let truth = tmp("a.truth.json");
    gen_tiny(&inst, &truth);
    let first = std::fs::read(&inst).unwrap();
    ddccmckp::instance::load_instance(&first).expect("generated instance loads");
    ddccmckp::generator::TruthModel::from_json(&std::fs::read(&truth).unwrap())
        .expect("generated truth loads");
    gen_tiny(&inst, &truth);
    assert_eq!(first, std::fs::read(&inst).unwrap(), "same seed, same bytes");
}

#[test]
fn gen_accepts_presets() {
    let inst = tmp("preset.json");
    run_ok(&[
        "gen",
        "--preset", "lab-ss1-t14",
        "--seed", "1",
        "--out", inst.to_str().unwrap(),
    ]);
    let loaded = ddccmckp::instance::load_instance(&std::fs::read(&inst).unwrap()).unwrap();
    assert_eq!(loaded.num_classes, 3);
    assert_eq!(loaded.sample_count, 30);
}

#[test]
fn solve_then_eval_roundtrip() {
    let inst = tmp("b.json");
    let truth = tmp("b.truth.json");
    let sol = tmp("b.sol.json");
    gen_tiny(&inst, &truth);
    let out = run_ok(&[
        "solve",
        "--instance", inst.to_str().unwrap(),
        "--algo", "ddals",
        "--evaluator", "exact",
        "--seed", "3",
        "--truth", truth.to_str().unwrap(),
        "--rcl-draws", "20000",
        "--out", sol.to_str().unwrap(),
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["algorithm"], "ddals");
    assert!(v["cost"].as_f64().unwrap() > 0.0);
    assert!(v["rcl"].as_f64().is_some());

    let out = run_ok(&[
        "eval",
        "--instance", inst.to_str().unwrap(),
        "--solution", sol.to_str().unwrap(),
        "--evaluator", "exact",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["verdict"] == "feasible" || v["verdict"] == "infeasible");
    assert_eq!(v["method"], "ExactHeap");
}

#[test]
fn experiment_emits_csv_with_aggregates() {
    let inst = tmp("c.json");
    let truth = tmp("c.truth.json");
    let report = tmp("c.csv");
    gen_tiny(&inst, &truth);
    run_ok(&[
        "experiment",
        "--instance", inst.to_str().unwrap(),
        "--truth", truth.to_str().unwrap(),
        "--algos", "ddals-o,greedy",
        "--reps", "2",
        "--evaluator", "exact",
        "--rcl-draws", "5000",
        "--seed", "7",
        "--out", report.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("benchmark,algorithm,variant,rep,seed,C,ET,ECL,RCL,feasible"));
    assert!(text.contains(",agg,"));
    assert!(text.lines().count() >= 1 + 4 + 4);
}

#[test]
fn ablate_emits_pdr_table() {
    let report = tmp("d.csv");
    run_ok(&[
        "ablate",
        "--benchmarks", "lab-ss1-t14",
        "--reps", "2",
        "--evaluator", "exact",
        "--seed", "2",
        "--out", report.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("benchmark,r-CP,no-LSS,no-Degrade,no-FSS"));
    assert!(text.lines().last().unwrap().starts_with("Avg.PDR,"));
}

#[test]
fn probe_amc_reports_counters() {
    let inst = tmp("e.json");
    let truth = tmp("e.truth.json");
    gen_tiny(&inst, &truth);
    let out = run_ok(&[
        "probe-amc",
        "--instance", inst.to_str().unwrap(),
        "--n", "100",
        "--mc-draws", "1000",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["mc_total_draws"].as_u64().unwrap(), 100 * 1000);
    assert!(v["amc_total_draws"].as_u64().unwrap() <= 100 * 1000);
}

#[test]
fn failures_exit_nonzero_with_machine_readable_error() {
    let out = bin()
        .args(["solve", "--instance", "/nonexistent.json", "--algo", "greedy"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let line = String::from_utf8_lossy(&out.stderr);
    let v: serde_json::Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    assert!(v["error"].as_str().unwrap().contains("/nonexistent.json"));
}

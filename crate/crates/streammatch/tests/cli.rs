//! End-to-end checks of the command-line interface: subcommands, file
//! formats, and exit codes (0 ok, 1 usage, 2 IO/parse, 3 invariant failure).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_streammatch"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("streammatch_cli_{tag}_{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir
}

#[test]
fn gen_oracle_verify_round_trip() {
    let dir = temp_dir("round_trip");
    let out = run_in(&dir, &["gen", "half_trap", "--n", "50", "-o", "ht.txt"]);
    assert!(out.status.success(), "{out:?}");

    let text = std::fs::read_to_string(dir.join("ht.txt")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("100 100 150"));
    // Adversarial order: the traps come first.
    assert_eq!(lines.next(), Some("0 50"));

    let out = run_in(&dir, &["oracle", "-g", "ht.txt"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "100");

    let out = run_in(&dir, &["verify", "-g", "ht.txt", "-a", "greedy"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("matched 50 of optimum 100"));
    assert!(stdout.contains("result: PASS"));

    let out = run_in(&dir, &["verify", "-g", "ht.txt", "-a", "two_pass_det"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("two_pass_det_floor"));
}

#[test]
fn run_subcommand_writes_the_pinned_csv() {
    let dir = temp_dir("run_csv");
    let spec = r#"{
  "algorithm": "greedy",
  "generator": "half_trap",
  "gen_n": 10,
  "order": "adversarial",
  "trials": 2,
  "output": "result.csv"
}
"#;
    std::fs::write(dir.join("spec.json"), spec).unwrap();
    let out = run_in(&dir, &["run", "-c", "spec.json"]);
    assert!(out.status.success(), "{out:?}");
    let csv = std::fs::read_to_string(dir.join("result.csv")).unwrap();
    let expected = "\
algorithm,graph,order_seed,sample_seed,matched,opt,ratio,passes,peak_edges,ms
greedy,half_trap_10,,,10,20,0.5,1,10,0
greedy,half_trap_10,,,10,20,0.5,1,10,0
aggregate,half_trap_10,0.5,0,0.5,0.5,2,,,
";
    assert_eq!(csv, expected);

    // -o overrides the spec's output path.
    let out = run_in(&dir, &["run", "-c", "spec.json", "-o", "other.csv"]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(dir.join("other.csv")).unwrap(), csv);
}

#[test]
fn verify_accepts_order_seed_and_order_file() {
    let dir = temp_dir("orders");
    assert!(run_in(&dir, &["gen", "random", "--n-a", "12", "--n-b", "12", "--m", "40", "--seed", "5", "-o", "g.txt"])
        .status
        .success());
    let out = run_in(&dir, &["verify", "-g", "g.txt", "--order-seed", "9", "-a", "greedy"]);
    assert!(out.status.success(), "{out:?}");

    let order: String = (0..40).rev().map(|i| format!("{i}\n")).collect();
    std::fs::write(dir.join("order.txt"), order).unwrap();
    let out = run_in(&dir, &["verify", "-g", "g.txt", "--order-file", "order.txt", "-a", "semi", "--lambda", "2"]);
    assert!(out.status.success(), "{out:?}");
    assert!(String::from_utf8_lossy(&out.stdout).contains("semi_coverage"));

    // A non-permutation order file is a parse error.
    std::fs::write(dir.join("bad_order.txt"), "0\n0\n").unwrap();
    let out = run_in(&dir, &["verify", "-g", "g.txt", "--order-file", "bad_order.txt", "-a", "greedy"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes_distinguish_failure_classes() {
    let dir = temp_dir("exits");
    // Usage: unknown algorithm.
    assert!(run_in(&dir, &["gen", "half_trap", "--n", "4", "-o", "g.txt"]).status.success());
    let out = run_in(&dir, &["verify", "-g", "g.txt", "-a", "nope"]);
    assert_eq!(out.status.code(), Some(1));

    // IO/parse: missing file, then malformed content.
    let out = run_in(&dir, &["oracle", "-g", "absent.txt"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(dir.join("dup.txt"), "2 2 3\n0 0\n0 0\n1 1\n").unwrap();
    let out = run_in(&dir, &["oracle", "-g", "dup.txt"]);
    assert_eq!(out.status.code(), Some(2));

    // Invariant failure: the buffering baseline trips the memory audit.
    assert!(run_in(&dir, &["gen", "random", "--n-a", "30", "--n-b", "30", "--m", "700", "--seed", "2", "-o", "dense.txt"])
        .status
        .success());
    let out = run_in(&dir, &["verify", "-g", "dense.txt", "-a", "store_all"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn oracle_prints_only_the_size() {
    let dir = temp_dir("oracle");
    std::fs::write(dir.join("k22.txt"), "2 2 4\n0 0\n0 1\n1 0\n1 1\n").unwrap();
    let out = run_in(&dir, &["oracle", "-g", "k22.txt"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "2\n");
}

use std::io::Write;
use std::process::{Command, Output, Stdio};

use panelcross::analysis::random_instance;
use panelcross::io::{save_instance, InstanceFormat};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_panelcross"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn first_number(out: &Output) -> u64 {
    stdout(out).split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn gen_pipes_into_pcr() {
    let generated = run(&["gen", "random", "--n", "2", "--k", "2", "--m", "1", "--seed", "7"]);
    assert!(generated.status.success());
    let out = run_with_stdin(&["pcr", "--input", "-"], &generated.stdout);
    assert!(out.status.success());
    assert!(first_number(&out) <= 1);
}

#[test]
fn expected_prints_value_and_fraction() {
    let out = run(&["expected", "--n", "2", "--k", "2", "--m", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0.125 (1/8)");

    let out = run(&["--json", "expected", "--n", "2", "--k", "2", "--m", "2"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exact"], "5/16");
}

#[test]
fn oracle_agrees_with_pcr_on_seeded_sweep() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..200u64 {
        let (n, k, m) = (1 + seed as usize % 5, 1 + (seed / 5) as usize % 3, 1 + (seed / 15) as usize % 3);
        let inst = random_instance(n, k, m, seed).unwrap();
        let path = dir.path().join(format!("{seed}.json"));
        std::fs::write(&path, save_instance(&inst, InstanceFormat::Json)).unwrap();
        let path = path.to_str().unwrap();
        let fast = run(&["pcr", "--input", path]);
        let slow = run(&["oracle", "pcr", "--input", path]);
        assert!(fast.status.success() && slow.status.success(), "seed {seed}");
        assert_eq!(first_number(&fast), first_number(&slow), "seed {seed}");
    }
}

#[test]
fn layout_file_round_trips_through_draw() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.csv");
    let layout = dir.path().join("layout.json");
    let svg = dir.path().join("out.svg");
    let g = run(&["gen", "extremal", "--n", "5", "--k", "2", "--m", "2", "--out", inst.to_str().unwrap()]);
    assert!(g.status.success());

    let out = run(&["layout", "--input", inst.to_str().unwrap(), "--out", layout.to_str().unwrap()]);
    assert!(out.status.success());
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&layout).unwrap()).unwrap();
    // 2 · 3 pairs split across the two categories, two intervals
    assert_eq!(file["report"]["total"], 12);
    assert_eq!(file["report"]["strong"], 12);

    let args = ["draw", "--input", inst.to_str().unwrap(), "--layout", layout.to_str().unwrap()];
    let out = run(&[&args[..], &["--svg", svg.to_str().unwrap()]].concat());
    assert!(out.status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("crossings: 12"));
    // same input, same bytes
    assert_eq!(stdout(&run(&args)), text);
}

#[test]
fn optimize_sigma_and_lp_export() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.csv");
    std::fs::write(&inst, "# sigma: none\nsubject,t0,t1\na,x,y\nb,y,z\nc,z,x\n").unwrap();
    let path = inst.to_str().unwrap();

    let exact = run(&["--json", "optimize-sigma", "--input", path, "--exact"]);
    assert!(exact.status.success());
    let exact: Value = serde_json::from_slice(&exact.stdout).unwrap();
    let oracle = run(&["--json", "oracle", "sigma", "--input", path]);
    let oracle: Value = serde_json::from_slice(&oracle.stdout).unwrap();
    assert_eq!(exact["objective"], oracle["objective"]);

    let lp = dir.path().join("model.lp");
    let out = run(&["optimize-sigma", "--input", path, "--export-lp", lp.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&lp).unwrap();
    assert!(text.contains("Minimize") && text.contains("Binary") && text.trim_end().ends_with("End"));
}

#[test]
fn tile_export_lists_walls() {
    let out = run_with_stdin(&["tile", "--input", "-"], b"subject,t0,t1\na,c1,c2\nb,c2,c1\n");
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("wall ")).count(), 2);
    assert_eq!(text.lines().filter(|l| l.starts_with("edge ")).count(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["pcr"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let bad = run_with_stdin(&["pcr", "--input", "-"], b"subject,t0,t1\na,c1\n");
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("row 2"));

    assert_eq!(run(&["pcr", "--input", "/nonexistent/inst.csv"]).status.code(), Some(2));
    assert_eq!(run(&["expected", "--n", "3", "--k", "1", "--m", "1"]).status.code(), Some(2));

    // 9! orderings per test is past the oracle budget
    let big = run_with_stdin(
        &["oracle", "pcr", "--input", "-"],
        b"subject,t0,t1\na,c,c\nb,c,c\nc,c,c\nd,c,c\ne,c,c\nf,c,c\ng,c,c\nh,c,c\ni,c,c\n",
    );
    assert_eq!(big.status.code(), Some(3));
}

#[test]
fn json_errors_go_to_stdout() {
    let out = run(&["--json", "pcr", "--input", "/nonexistent/inst.csv"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["code"], 2);
}

#[test]
fn estimate_and_bounds() {
    let out = run(&["--json", "estimate", "--n", "3", "--k", "2", "--m", "2", "--samples", "2000", "--seed", "3"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let (mean, stderr) = (v["mean"].as_f64().unwrap(), v["stderr"].as_f64().unwrap());
    assert!((mean - 15.0 / 16.0).abs() < 4.0 * stderr);

    let out = run(&["--json", "bounds-consistent", "--n", "6", "--k", "4", "--m", "2"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["lower"].as_u64(), v["upper"].as_u64()), (Some(18), Some(30)));
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_domsetkit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn file(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const STAR: &str = "p ds 5 4\ne 1 2\ne 1 3\ne 1 4\ne 1 5\n";

#[test]
fn solve_vc_exact_on_star() {
    let dir = tempfile::tempdir().unwrap();
    let g = file(dir.path(), "star.ds", STAR);
    let o = run(&["solve", &g, "--algo", "vc-exact", "--check-oracle"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    assert_eq!(r["size"], 1);
    assert_eq!(r["verification"]["dominating"], true);
    assert_eq!(r["verification"]["oracle"]["ratio"], 1.0);
}

#[test]
fn every_algorithm_meets_its_contract_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let g = file(dir.path(), "g.ds", "p ds 7 8\ne 1 2\ne 2 3\ne 3 4\ne 4 1\ne 4 5\ne 5 6\ne 6 7\ne 7 5\n");
    for algo in ["tw-exact", "tw-approx2", "twd-approx2", "vc-exact", "fes-exact", "approx-k", "greedy", "compress-brute", "brute"] {
        let o = run(&["solve", &g, "--algo", algo, "--check-oracle", "--emit-modulator", "--alpha", "1/2", "--k", "2"]);
        assert_eq!(code(&o), 0, "{algo}: {}", String::from_utf8_lossy(&o.stderr));
        let r = json(&o);
        assert_eq!(r["verification"]["dominating"], true, "{algo}");
        assert_ne!(r["verification"]["oracle"]["within_contract"], false, "{algo}");
    }
}

#[test]
fn oracle_check_reports_the_cap() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("big.ds");
    let o = run(&["gen", "cycle", "--n", "20", "--out", g.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = run(&["solve", g.to_str().unwrap(), "--algo", "tw-exact", "--check-oracle"]);
    assert_eq!(json(&o)["verification"]["oracle"]["status"], "skipped: cap");
    assert_eq!(json(&o)["weight"], 7);
}

#[test]
fn weighted_instance_and_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let g = file(dir.path(), "p4.ds", "p ds 4 3\ne 1 2\ne 2 3\ne 3 4\nw 1 10\nw 2 1\nw 3 1\nw 4 10\n");
    let out = dir.path().join("report.json");
    let o = run(&["solve", &g, "--algo", "fes-exact", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(r["weight"], 2);
    assert_eq!(r["solution"], serde_json::json!([2, 3]));
    assert_eq!(code(&run(&["solve", &g, "--algo", "greedy"])), 2);
}

#[test]
fn compress_then_lift_c12() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c12.ds");
    run(&["gen", "cycle", "--n", "12", "--out", g.to_str().unwrap()]);
    let out = dir.path().join("c12");
    let o = run(&["compress", g.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["within_bounds"], true);
    let partial = std::fs::read_to_string(out.join("partial.sol")).unwrap();
    assert_eq!(partial.split_whitespace().count() - 1, 4);
    let compressed = std::fs::read_to_string(out.join("compressed.ds")).unwrap();
    assert!(compressed.lines().any(|l| l.starts_with('x')));
    let empty = file(dir.path(), "empty.sol", "s\n");
    let o = run(&[
        "lift",
        g.to_str().unwrap(),
        out.join("trace.jsonl").to_str().unwrap(),
        &empty,
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(String::from_utf8_lossy(&o.stdout).split_whitespace().count() - 1, 4);
}

#[test]
fn compress_lift_round_trip_on_a_theta_graph() {
    let dir = tempfile::tempdir().unwrap();
    let text = "p ds 10 11\ne 1 3\ne 3 4\ne 4 2\ne 1 5\ne 5 6\ne 6 7\ne 7 2\ne 1 8\ne 8 9\ne 9 10\ne 10 2\n";
    let g = file(dir.path(), "theta.ds", text);
    let out = dir.path().join("out");
    assert_eq!(code(&run(&["compress", &g, "--out", out.to_str().unwrap()])), 0);
    let inst = domset::graph::io::parse_instance(&std::fs::read_to_string(out.join("compressed.ds")).unwrap()).unwrap();
    let rds = domset::compress::RdsInstance::new(inst.graph, inst.exempt.unwrap()).unwrap();
    let best = domset::compress::rds_brute(&rds).unwrap().witness;
    let sol = file(dir.path(), "best.sol", &domset::graph::io::set_line('s', &best));
    let o = run(&["lift", &g, out.join("trace.jsonl").to_str().unwrap(), &sol]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let lifted = domset::graph::io::parse_solution(&String::from_utf8_lossy(&o.stdout), 10).unwrap();
    assert_eq!(lifted.len(), 4);
}

#[test]
fn lift_rejects_a_non_solution() {
    let dir = tempfile::tempdir().unwrap();
    let text = "p ds 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";
    let g = file(dir.path(), "k4.ds", text);
    let out = dir.path().join("out");
    assert_eq!(code(&run(&["compress", &g, "--out", out.to_str().unwrap()])), 0);
    let compressed = std::fs::read_to_string(out.join("compressed.ds")).unwrap();
    if compressed.starts_with("p ds 0") {
        return;
    }
    let empty = file(dir.path(), "empty.sol", "s\n");
    let o = run(&["lift", &g, out.join("trace.jsonl").to_str().unwrap(), &empty]);
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = file(dir.path(), "star.ds", STAR);
    let good = file(dir.path(), "good.sol", "s 1\n");
    let bad = file(dir.path(), "bad.sol", "s 2\n");
    let junk = file(dir.path(), "junk.sol", "s 9\n");
    assert_eq!(code(&run(&["verify", &g, &good])), 0);
    let o = run(&["verify", &g, &bad]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["undominated"], serde_json::json!([3, 4, 5]));
    assert_eq!(code(&run(&["verify", &g, &junk])), 2);
}

#[test]
fn decompose_output_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.ds");
    run(&["gen", "random", "--n", "15", "--p", "0.3", "--seed", "4", "--out", g.to_str().unwrap()]);
    for nice in [false, true] {
        let td = dir.path().join("g.td");
        let mut args = vec!["decompose", g.to_str().unwrap(), "--out", td.to_str().unwrap()];
        if nice {
            args.push("--nice");
        }
        assert_eq!(code(&run(&args)), 0);
        let o = run(&["verify", g.to_str().unwrap(), "--td", td.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert_eq!(json(&o)["valid"], true);
    }
    let broken = file(dir.path(), "broken.td", "s td 1 1 15\nb 1 1\n");
    assert_eq!(code(&run(&["verify", g.to_str().unwrap(), "--td", &broken])), 3);
}

#[test]
fn parse_and_resource_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = file(dir.path(), "bad.ds", "p ds 2 1\ne 1 3\n");
    assert_eq!(code(&run(&["solve", &bad, "--algo", "brute"])), 2);
    assert_eq!(code(&run(&["solve", "/nonexistent.ds", "--algo", "brute"])), 2);
    assert_eq!(code(&run(&["solve", &bad, "--algo", "nope"])), 2);
    let g = dir.path().join("big.ds");
    run(&["gen", "random", "--n", "30", "--p", "0.5", "--out", g.to_str().unwrap()]);
    assert_eq!(code(&run(&["solve", g.to_str().unwrap(), "--algo", "brute"])), 4);
    let c = dir.path().join("c.ds");
    run(&["gen", "cycle", "--n", "8", "--out", c.to_str().unwrap()]);
    let o = run(&["solve", c.to_str().unwrap(), "--algo", "approx-k", "--alpha", "9/10", "--k", "40"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn gen_is_seeded() {
    let a = run(&["gen", "connected", "--n", "12", "--p", "0.2", "--seed", "7", "--max-weight", "5"]);
    let b = run(&["gen", "connected", "--n", "12", "--p", "0.2", "--seed", "7", "--max-weight", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let inst = domset::graph::io::parse_instance(&String::from_utf8_lossy(&a.stdout)).unwrap();
    assert_eq!(inst.graph.n(), 12);
}

#[test]
fn bench_emits_csv_in_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = file(dir.path(), "a.ds", STAR);
    let g2 = file(dir.path(), "b.ds", "p ds 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    let o = bin()
        .args(["bench", &g1, &g2, "--algos", "tw-exact,fes-exact,greedy"])
        .env("DOMSETKIT_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "instance,algo,n,m,parameter,weight,time-ms");
    assert_eq!(lines.len(), 7);
    assert!(lines[1].starts_with(&format!("{g1},tw-exact,5,4,1,1,")));
    assert!(lines[6].starts_with(&format!("{g2},greedy,3,3,")));
}

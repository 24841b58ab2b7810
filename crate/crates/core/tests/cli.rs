use std::io::Write;
use std::process::{Command, Output, Stdio};

use interdiction::{InterdictionInstance, Rational, Solution};
use serde_json::Value;

const T1: &str = "# golden triangle\n3 3 2\n1 2 4 2\n2 3 3 1\n1 3 5 3\n";

fn run(args: &[&str], stdin: &str) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_interdict"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn ratio(v: &Value) -> (i64, i64) {
    (v["num"].as_i64().unwrap(), v["den"].as_i64().unwrap())
}

#[test]
fn solve_t1_json() {
    let v = json(&run(&["solve", "--json"], T1));
    assert_eq!(v["value"], 3);
    assert_eq!(ratio(&v["lambda_star"]), (2, 1));
    assert_eq!(ratio(&v["L_star"]), (6, 1));
    assert_eq!(ratio(&v["Lambda"]), (2, 1));
    assert_eq!(v["candidates"], 3);
    assert_eq!(v["degenerate"], false);
    assert_eq!(v["S"], serde_json::json!([0, 1]));
    assert_eq!(v["R"], serde_json::json!([0]));
    assert_eq!(v["seed"], 0);
    assert!(v["timings_ms"]["total"].is_number());
}

#[test]
fn solve_json_round_trips_through_solution() {
    let out = run(&["solve", "--json", "--no-timings"], T1);
    let sol: Solution = serde_json::from_slice(&out.stdout).unwrap();
    let inst = InterdictionInstance::parse(T1).unwrap();
    sol.verify(inst.ground()).unwrap();
    assert_eq!(sol.lambda_star, Rational::from(2u64));
}

#[test]
fn degenerate_triangle() {
    let v = json(&run(&["solve", "--json"], "3 3 2\n1 2 1 1\n2 3 1 1\n1 3 1 1\n"));
    assert_eq!(v["value"], 0);
    assert_eq!(v["degenerate"], true);
}

#[test]
fn malformed_line_exits_two_and_names_it() {
    let out = run(&["solve"], "3 2 1\n1 2 x 3\n2 3 1 1\n");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["solve", "/nonexistent/instance.txt"], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_epsilon_exits_two() {
    let out = run(&["solve", "--epsilon", "3/2"], T1);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fptas_flag() {
    let v = json(&run(&["solve", "--json", "--epsilon", "1/10"], T1));
    assert_eq!(v["value"], 3);
    assert_eq!(v["knapsack"], "fptas(1/10)");
}

#[test]
fn check_t1_passes() {
    let out = run(&["check"], T1);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok value 3"));
}

#[test]
fn check_guard_above_sixteen_vertices() {
    let gen = run(&["gen", "--n", "17", "--m", "20", "--seed", "1"], "");
    let text = String::from_utf8(gen.stdout).unwrap();
    let out = run(&["check"], &text);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("16"));
}

#[test]
fn generated_instances_pass_check() {
    for seed in 0..12 {
        let gen = run(&["gen", "--n", "6", "--m", "10", "--seed", &seed.to_string()], "");
        let text = String::from_utf8(gen.stdout).unwrap();
        let out = run(&["check"], &text);
        assert_eq!(out.status.code(), Some(0), "seed {seed}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn gen_is_deterministic() {
    let a = run(&["gen", "--n", "12", "--m", "30", "--seed", "9"], "");
    let b = run(&["gen", "--n", "12", "--m", "30", "--seed", "9"], "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    InterdictionInstance::parse(&String::from_utf8(a.stdout).unwrap()).unwrap();
}

#[test]
fn lambda_t1() {
    let v = json(&run(&["lambda", "--json"], T1));
    assert_eq!(ratio(&v["lambda_star"]), (2, 1));
    assert_eq!(ratio(&v["line_lo"]["slope"]), (1, 1));
    assert_eq!(ratio(&v["line_hi"]["slope"]), (-1, 1));
    let text = run(&["lambda"], T1);
    assert!(String::from_utf8_lossy(&text.stdout).contains("lambda*  2/1"));
}

#[test]
fn lambda_on_degenerate_input_exits_two() {
    let out = run(&["lambda"], "3 3 2\n1 2 1 1\n2 3 1 1\n1 3 1 1\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_t1() {
    let v = json(&run(&["enumerate", "--json"], T1));
    let values: Vec<(i64, i64)> = v["cuts"].as_array().unwrap().iter().map(|c| ratio(&c["value"])).collect();
    assert_eq!(values, vec![(6, 1), (7, 1), (9, 1)]);
    assert_eq!(v["strict"], true);
    assert_eq!(v["method"], "exhaustive");

    let v = json(&run(&["enumerate", "--json", "--threshold-mult", "7/6"], T1));
    assert_eq!(v["cuts"].as_array().unwrap().len(), 1);

    let v = json(&run(&["enumerate", "--json", "--enum", "contraction", "--seed", "3"], T1));
    assert_eq!(v["cuts"].as_array().unwrap().len(), 3);
    assert_eq!(v["method"], "contraction");
}

#[test]
fn oracle_json_has_table() {
    let v = json(&run(&["oracle", "--json"], T1));
    assert_eq!(v["value"], 3);
    assert_eq!(v["per_cut"].as_array().unwrap().len(), 3);
}

#[test]
fn bad_thread_env_exits_two() {
    let out = run_env(&["solve"], T1, &[("INTERDICT_THREADS", "lots")]);
    assert_eq!(out.status.code(), Some(2));
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn envyfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_envyfree")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_worked_example_with_each_solver() {
    let a = data("instance_a.json");
    for solver in ["monge", "monge-fast", "hungarian", "brute"] {
        let out = envyfree(&["solve", "--input", path_str(&a), "--solver", solver]);
        assert_eq!(code(&out), 0, "{solver}: {}", String::from_utf8_lossy(&out.stderr));
        let v = json(&out);
        assert_eq!(v["revenue"], 5.0, "{solver}");
        assert_eq!(v["prices"], serde_json::json!([4.0, 1.0]), "{solver}");
        assert_eq!(v["assignment"], serde_json::json!([0, 1]), "{solver}");
    }
}

#[test]
fn csv_and_json_instances_agree() {
    let from_csv = envyfree(&["solve", "-i", path_str(&data("instance_a.csv"))]);
    let from_json = envyfree(&["solve", "-i", path_str(&data("instance_a.json"))]);
    assert_eq!(code(&from_csv), 0);
    assert_eq!(from_csv.stdout, from_json.stdout);
}

#[test]
fn solve_output_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.json");
    let out = envyfree(&["solve", "-i", path_str(&data("instance_b.json")), "-o", path_str(&target)]);
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read(&target).unwrap(), fs::read(data("outcome_b_monge.json")).unwrap());
    let again = envyfree(&["solve", "-i", path_str(&data("instance_b.json"))]);
    assert_eq!(again.stdout, fs::read(data("outcome_b_monge.json")).unwrap());
}

#[test]
fn solve_error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("n9.json");
    fs::write(&big, r#"{"budgets":[1,2,3,4,5,6,7,8,9],"qualities":[1,2,3,4,5,6,7,8,9]}"#).unwrap();
    let out = envyfree(&["solve", "-i", path_str(&big), "-s", "brute"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("too large"));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"budgets":[3,0],"qualities":[2,1]}"#).unwrap();
    assert_eq!(code(&envyfree(&["solve", "-i", path_str(&bad)])), 1);
    fs::write(&bad, r#"{"budgets":[3,1],"qualities":[2"#).unwrap();
    assert_eq!(code(&envyfree(&["solve", "-i", path_str(&bad)])), 1);
    assert_eq!(code(&envyfree(&["solve", "-i", path_str(&dir.path().join("missing.json"))])), 1);
    assert_eq!(code(&envyfree(&["solve", "-i", path_str(&data("instance_a.json")), "-s", "simplex"])), 1);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = data("instance_a.json");
    let outcome = dir.path().join("o.json");

    fs::write(&outcome, r#"{"assignment":[0,1],"prices":[4,1],"revenue":5,"surpluses":[2,0]}"#).unwrap();
    let out = envyfree(&["verify", "--instance", path_str(&a), "--outcome", path_str(&outcome)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["envy_free"], true);

    fs::write(&outcome, r#"{"assignment":[0,1],"prices":[5,1],"revenue":6,"surpluses":[1,0]}"#).unwrap();
    let out = envyfree(&["verify", "--instance", path_str(&a), "--outcome", path_str(&outcome)]);
    assert_eq!(code(&out), 3);
    let report = json(&out);
    assert_eq!(report["envy_free"], false);
    assert_eq!(report["violating_pairs"][0]["buyer"], 0);
    assert_eq!(report["violating_pairs"][0]["item"], 1);

    fs::write(&outcome, r#"{"assignment":[0,0],"prices":[4,1],"revenue":5,"surpluses":[2,0]}"#).unwrap();
    let out = envyfree(&["verify", "--instance", path_str(&a), "--outcome", path_str(&outcome)]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["perfect"], false);

    fs::write(&outcome, r#"{"assignment":[0,1],"prices":[4,"#).unwrap();
    let out = envyfree(&["verify", "--instance", path_str(&a), "--outcome", path_str(&outcome)]);
    assert_eq!(code(&out), 1);

    fs::write(&outcome, r#"{"assignment":[0],"prices":[4],"revenue":4,"surpluses":[2]}"#).unwrap();
    let out = envyfree(&["verify", "--instance", path_str(&a), "--outcome", path_str(&outcome)]);
    assert_eq!(code(&out), 1);
}

#[test]
fn verify_respects_tolerance_flag() {
    let dir = tempfile::tempdir().unwrap();
    let outcome = dir.path().join("o.json");
    // buyer 0 envies item 1 by 0.5
    fs::write(&outcome, r#"{"assignment":[0,1],"prices":[4.5,1],"revenue":5.5,"surpluses":[1.5,0]}"#)
        .unwrap();
    let a = data("instance_a.json");
    let args = |tol: &'static str| {
        envyfree(&["verify", "--instance", path_str(&a), "--outcome", path_str(&outcome), "--tol", tol])
    };
    assert_eq!(code(&args("0.1")), 3);
    assert_eq!(code(&args("0.6")), 0);
}

#[test]
fn compare_worked_examples() {
    for (file, revenue) in [("instance_a.json", 5.0), ("instance_b.json", 11.0)] {
        let out = envyfree(&["compare", "--instance", path_str(&data(file))]);
        assert_eq!(code(&out), 0);
        let report = json(&out);
        assert_eq!(report["revenues_agree"], true);
        let rows = report["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r["revenue"] == revenue));
    }
    assert_eq!(code(&envyfree(&["compare", "--instance", "/nonexistent.json"])), 1);
}

#[test]
fn gen_is_deterministic_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("g.json");
    let args =
        ["gen", "--n", "3", "--dist", "uniform_int", "--low", "1", "--high", "100", "--seed", "42", "-o"];
    let out = envyfree(&[&args[..], &[path_str(&first)]].concat());
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["seed"], 42);
    assert_eq!(fs::read(&first).unwrap(), fs::read(data("gen_n3_seed42.json")).unwrap());

    let out = envyfree(&["gen", "--n", "0", "--dist", "uniform_int"]);
    assert_eq!(code(&out), 1);
    assert_eq!(code(&envyfree(&["gen", "--n", "3", "--dist", "zipf"])), 1);
    assert_eq!(code(&envyfree(&["gen", "--n", "3", "--low", "5", "--high", "1"])), 1);

    let out = envyfree(&[
        "gen",
        "--n",
        "4",
        "--dist",
        "tie_heavy",
        "--distinct",
        "2",
        "--seed",
        "7",
        "--low",
        "1",
        "--high",
        "10",
    ]);
    assert_eq!(code(&out), 0);
    let mut budgets: Vec<f64> =
        json(&out)["budgets"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    budgets.sort_by(f64::total_cmp);
    budgets.dedup();
    assert!(budgets.len() <= 2);

    let csv_path = dir.path().join("g.csv");
    let out = envyfree(&[
        "gen",
        "--n",
        "5",
        "--dist",
        "near_degenerate",
        "--low",
        "5",
        "--high",
        "9",
        "-o",
        path_str(&csv_path),
    ]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&csv_path).unwrap();
    assert!(text.starts_with("budget,quality\n"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn gen_solve_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (i, dist) in ["uniform_real", "uniform_int", "tie_heavy", "near_degenerate"].iter().enumerate() {
        for seed in 0..3u64 {
            let n = if seed == 0 { "1" } else { "7" };
            let inst = dir.path().join(format!("i{i}_{seed}.json"));
            let seed = seed.to_string();
            let out = envyfree(&[
                "gen",
                "--n",
                n,
                "--dist",
                dist,
                "--low",
                "1",
                "--high",
                "50",
                "--seed",
                &seed,
                "-o",
                path_str(&inst),
            ]);
            assert_eq!(code(&out), 0);
            for solver in ["monge", "monge-fast", "hungarian", "brute"] {
                let outcome = dir.path().join(format!("o_{i}_{seed}_{solver}.json"));
                let out = envyfree(&["solve", "-i", path_str(&inst), "-s", solver, "-o", path_str(&outcome)]);
                assert_eq!(code(&out), 0, "{dist} {solver}");
                let out =
                    envyfree(&["verify", "--instance", path_str(&inst), "--outcome", path_str(&outcome)]);
                assert_eq!(code(&out), 0, "{dist} {solver}: {}", String::from_utf8_lossy(&out.stdout));
            }
        }
    }
}

#[test]
fn bench_writes_records_and_rejects_bad_flags() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("bench.csv");
    let out =
        envyfree(&["bench", "--sizes", "8,16", "--reps", "2", "--seed", "1", "-o", path_str(&csv_path)]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&csv_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,solver,wall_time_s,revenue,welfare"));
    assert_eq!(lines.count(), 8);
    assert!(String::from_utf8_lossy(&out.stdout).contains("monge: log-log slope"));

    assert_eq!(code(&envyfree(&["bench", "--sizes", ""])), 1);
    assert_eq!(code(&envyfree(&["bench", "--sizes", "0"])), 1);
    assert_eq!(code(&envyfree(&["bench", "--sizes", "8", "--reps", "0"])), 1);
    assert_eq!(code(&envyfree(&["bench"])), 1);
}

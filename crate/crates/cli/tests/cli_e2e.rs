use std::process::{Command, Output};

use serde_json::Value;

fn meanlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meanlab"))
        .args(args)
        .env_remove("MEANLAB_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_prints_the_quadratic_mean() {
    let o = meanlab(&["eval", "--builtin", "p=2", "--w", "0.5,0.5", "--x", "1,7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "5\n");
}

#[test]
fn eval_csv_and_negative_exponents() {
    let o = meanlab(&["eval", "--builtin", "-1", "--w", "0.5,0.5", "--x", "1,3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "value\n1.5\n");
}

#[test]
fn eval_reads_json_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.json");
    std::fs::write(&path, r#"{"w": [0.25, 0.75], "x": [4, 8]}"#).unwrap();
    let o = meanlab(&["eval", "--dsl", "sum(w*x)", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "7\n");
}

#[test]
fn malformed_json_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.json");
    std::fs::write(&path, r#"{"w": ["0.5", "0.5"], "x": [1, 2]}"#).unwrap();
    let o = meanlab(&["eval", "--builtin", "2", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("input"));
}

#[test]
fn weight_sum_violation_is_a_usage_error() {
    let o = meanlab(&["eval", "--builtin", "2", "--w", "0.5,0.6", "--x", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sum to"), "{}", stderr(&o));
}

#[test]
fn dsl_source_may_start_with_a_minus() {
    let o = meanlab(&["eval", "--dsl", "-sum(w*x)+3", "--w", "1", "--x", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn dsl_parse_errors_carry_a_position() {
    let o = meanlab(&["eval", "--dsl", "sum(w*)", "--w", "1", "--x", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column 7"), "{}", stderr(&o));
}

#[test]
fn usage_errors() {
    assert_eq!(meanlab(&["eval", "--w", "1", "--x", "1"]).status.code(), Some(2));
    assert_eq!(meanlab(&["eval", "--builtin", "2", "--dsl", "sum(w*x)"]).status.code(), Some(2));
    assert_eq!(meanlab(&["eval", "--builtin", "two", "--w", "1", "--x", "1"]).status.code(), Some(2));
    assert_eq!(meanlab(&["eval", "--builtin", "2", "--w", "1"]).status.code(), Some(2));
    assert_eq!(meanlab(&["axioms", "--builtin", "2", "--check", "nope"]).status.code(), Some(2));
    assert_eq!(meanlab(&["axioms", "--builtin", "2", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(meanlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(meanlab(&["--help"]).status.code(), Some(0));
}

#[test]
fn axioms_exit_zero_for_a_convex_mean() {
    let o = meanlab(&["axioms", "--builtin", "p=3", "--trials", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
}

#[test]
fn axioms_report_the_convexity_witness() {
    let o = meanlab(&["axioms", "--builtin", "p=0.5", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let conv = v["checks"].as_array().unwrap().iter().find(|c| c["property_name"] == "convexity").unwrap();
    let c = &conv["counterexample"];
    assert_eq!(c["w"], serde_json::json!([0.5, 0.5]));
    assert_eq!(c["x"], serde_json::json!([1.0, 0.0]));
    assert_eq!(c["aux"]["y"], serde_json::json!([0.0, 1.0]));
    assert_eq!(c["lhs"], 0.5);
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let args = ["axioms", "--dsl", "sum(w^2*x)", "--trials", "300", "--seed", "9"];
    let a = meanlab(&args);
    let b = meanlab(&args);
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
    let c = meanlab(&["characterize", "--builtin", "2", "--trials", "50"]);
    let d = meanlab(&["characterize", "--builtin", "2", "--trials", "50"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |seed: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_meanlab"));
        cmd.args(["axioms", "--builtin", "2", "--trials", "20", "--check", "multiplicativity"]);
        match seed {
            Some(s) => cmd.env("MEANLAB_SEED", s),
            None => cmd.env_remove("MEANLAB_SEED"),
        };
        let v: Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        v["config"]["seed"].as_u64().unwrap()
    };
    assert_eq!(run(None), 42);
    assert_eq!(run(Some("7")), 7);
}

#[test]
fn output_file_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let o = meanlab(&[
        "axioms", "--builtin", "2", "--trials", "50", "--format", "csv", "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "property_name,kind,status,passed,trials,worst_residual,seed");
    assert_eq!(lines.count(), 10);
}

#[test]
fn positive_weights_skip_zero_weight() {
    let o = meanlab(&["axioms", "--builtin", "2", "--positive-weights", "--trials", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let zw = v["checks"].as_array().unwrap().iter().find(|c| c["property_name"] == "zero_weight").unwrap();
    assert_eq!(zw["status"], "not_applicable");
}

#[test]
fn recover_finds_three() {
    let o = meanlab(&["recover", "--dsl", "sum(w*x^3)^(1/3)"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p: f64 = v["p_hat"].as_str().unwrap().parse().unwrap();
    assert!((p - 3.0).abs() < 1e-9);
}

#[test]
fn recover_reports_the_degenerate_branch() {
    let o = meanlab(&["recover", "--builtin", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["degenerate_zero"], true);
    assert_eq!(v["p_hat"], Value::Null);
}

#[test]
fn characterize_verdicts() {
    let ok = meanlab(&["characterize", "--builtin", "3", "--trials", "100"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(v["verdict"], "consistent");
    let bad = meanlab(&["characterize", "--dsl", "(sum(w*x)+sum(w*x^2)^0.5)/2", "--trials", "100"]);
    assert_eq!(bad.status.code(), Some(1));
    let csv = meanlab(&["characterize", "--builtin", "1", "--trials", "5", "--format", "csv"]);
    assert!(stdout(&csv).starts_with("stage,trial,n,delta,residual,passed\n"));
}

#[test]
fn sandwich_orders_and_rejects_misordering() {
    let o = meanlab(&["sandwich", "--builtin", "1", "--w", "0.3183098861837907,0.6816901138162093", "--x", "0,1", "--delta", "0.01"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["denominator"], 200);
    let vals = &v["values"];
    assert!(vals["lower"].as_f64() <= vals["middle"].as_f64());
    assert!(vals["middle"].as_f64() <= vals["upper"].as_f64());
    // decreasing in x, so moving mass toward larger values lowers it
    let bad = meanlab(&["sandwich", "--dsl", "1/(1+sum(w*x))", "--w", "0.31,0.69", "--x", "9,1", "--delta", "0.3"]);
    assert_eq!(bad.status.code(), Some(1), "{}", stderr(&bad));
    let tiny = meanlab(&["sandwich", "--builtin", "2", "--w", "0.5,0.5", "--x", "1,2", "--delta", "1e-9"]);
    assert_eq!(tiny.status.code(), Some(2));
}

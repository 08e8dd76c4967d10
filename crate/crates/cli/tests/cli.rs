use std::process::{Command, Output};

fn purify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_purify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a CSV document, preamble and header removed.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn recurrence_default_crosses_two_thirds_between_40_and_41_at_d20() {
    let o = purify(&["recurrence", "--dim", "20"]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 61);
    let delta = |i: usize| rows[i][2].parse::<f64>().unwrap();
    assert!(delta(40) > 2.0 / 3.0 && delta(41) < 2.0 / 3.0);
    assert_eq!(rows[0][3], "");
}

#[test]
fn recurrence_zero_iterations_is_one_row() {
    let o = purify(&[
        "recurrence",
        "--dim",
        "2,inf",
        "--iters",
        "0",
        "--delta0",
        "0.4",
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0], ["2", "0", "0.4", ""]);
    assert_eq!(rows[1], ["inf", "0", "0.4", ""]);
}

#[test]
fn recurrence_json_reports_i_star() {
    let o = purify(&["recurrence", "--dim", "20,inf", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["meta"]["schema"], "recurrence/v1");
    assert_eq!(v["curves"][0]["i_star"], 40);
    assert_eq!(v["curves"][1]["i_star"], 104);
}

#[test]
fn recurrence_rejects_bad_delta() {
    let o = purify(&["recurrence", "--delta0", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn bounds_low_noise_qubit() {
    let o = purify(&[
        "bounds", "--dim", "2", "--delta0", "0.1", "--eps", "0.01", "--format", "json",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    let exact = v["sc_exact"].as_f64().unwrap();
    let bound = v["sc_theorem_bound"].as_f64().unwrap();
    let lower = v["lower_bound"].as_f64().unwrap();
    assert!(exact <= bound && bound <= 2000.0);
    assert!(lower <= exact);
    assert!(v["n_upper_inf"].is_null());
}

#[test]
fn bounds_text_marks_missing_values() {
    let o = purify(&["bounds", "--dim", "inf", "--delta0", "0.9"]);
    assert!(o.status.success());
    let t = stdout(&o);
    assert!(t.contains("N/A"));
    assert!(t.contains("d = inf"));
}

#[test]
fn region_boundary_at_one_half_for_qubits() {
    let o = purify(&["region", "--dim", "2", "--resolution", "4"]);
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 3);
    let mid: f64 = rows[1][2].parse().unwrap();
    assert!((mid - 5.0 / 7.0).abs() < 1e-15);
}

#[test]
fn verify_passes_and_is_byte_identical() {
    let a = purify(&["verify", "--dim", "3", "--trials", "10", "--seed", "5"]);
    let b = purify(&["verify", "--dim", "3", "--trials", "10", "--seed", "5"]);
    assert!(a.status.success());
    assert!(stdout(&a).contains("PASS"));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_rejects_dimension_above_cap() {
    let o = purify(&["verify", "--dim", "17", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulate_rejects_infinite_dimension() {
    let o = purify(&["simulate", "--dim", "inf"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulate_respects_depth_bound_and_writes_per_run_csv() {
    let dir = std::env::temp_dir().join(format!("purify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let per_run = dir.join("runs.csv");
    let o = purify(&[
        "simulate",
        "--levels",
        "4",
        "--runs",
        "500",
        "--per-run",
        per_run.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v = json(&o);
    let depth = v["summary"]["max_stack_depth"].as_u64().unwrap();
    assert!(depth <= v["depth_bound"].as_u64().unwrap());
    let rows = csv_rows(&std::fs::read_to_string(&per_run).unwrap());
    assert_eq!(rows.len(), 500);
    assert!(rows.iter().all(|r| r[1].parse::<u64>().unwrap() >= 16));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn simulate_ignores_job_count() {
    let a = purify(&["simulate", "--runs", "300", "--jobs", "1"]);
    let b = purify(&["simulate", "--runs", "300", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn simon_small_run() {
    let o = purify(&["simon", "--m", "2", "--trials", "20"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["table"][0]["m"], 2);
    assert!(v["table"][0]["success_rate"].as_f64().unwrap() >= 0.9);
}

#[test]
fn simon_budget_exhaustion_exits_3_with_output() {
    let o = purify(&[
        "simon", "--m", "3", "--trials", "4", "--budget", "1", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(csv_rows(&stdout(&o)).len(), 1);
}

#[test]
fn mixedness_far_class_is_detected() {
    let o = purify(&[
        "mixedness",
        "--dim",
        "64",
        "--case",
        "far",
        "--trials",
        "50",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["levels"], 22);
    assert_eq!(v["classes"].as_array().unwrap().len(), 1);
    assert_eq!(v["classes"][0]["errors"], 0);
}

#[test]
fn output_file_option() {
    let path = std::env::temp_dir().join(format!("purify-out-{}.csv", std::process::id()));
    let o = purify(&[
        "region",
        "--dim",
        "3",
        "--resolution",
        "10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# purify"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn help_and_version_exit_zero() {
    assert!(purify(&["--help"]).status.success());
    assert!(purify(&["--version"]).status.success());
    assert_eq!(purify(&["nope"]).status.code(), Some(1));
}

#[test]
fn unsupported_format_is_a_usage_error() {
    assert_eq!(
        purify(&["simulate", "--format", "csv"]).status.code(),
        Some(1)
    );
}

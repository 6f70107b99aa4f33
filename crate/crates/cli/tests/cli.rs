//! End-to-end tests driving the `sudler` binary.

use std::path::Path;
use std::process::{Command, Output};

fn sudler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sudler"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

/// Drops the wall-clock line so reports from different runs can be
/// compared byte for byte.
fn strip_timing(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.contains("wall_time_seconds"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn eval_matches_library_value() {
    let out = sudler(&["eval", "--alpha", "[0;(1)]", "--N", "610"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let got: f64 = stdout(&out).trim().parse().unwrap();
    let cf: contfrac::Cf = "[0;(1)]".parse().unwrap();
    assert_eq!(got, sudler::sudler_product(&cf, 610));
}

#[test]
fn perturbed_and_hk_print_values() {
    for cmd in ["perturbed", "hk"] {
        let out = sudler(&[cmd, "--alpha", "[0;(1,2,3)]", "--k", "9", "--eps", "-0.25"]);
        assert!(out.status.success(), "{}", stderr(&out));
        let v: f64 = stdout(&out).trim().parse().unwrap();
        assert!(v.is_finite() && v > 0.0);
    }
}

#[test]
fn decompose_check_reports_tiny_relative_error() {
    let out = sudler(&["decompose-check", "--alpha", "[0;(1,2,3)]", "--N", "54321"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let line = stdout(&out);
    let rel: f64 = line
        .split_whitespace()
        .find_map(|f| f.strip_prefix("rel_err="))
        .expect("rel_err field")
        .parse()
        .unwrap();
    assert!(rel < 1e-9, "{line}");
}

#[test]
fn liminf_reports_minimum_and_argmin() {
    let out = sudler(&["liminf", "--alpha", "[0;(1)]", "--N-max", "2000"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let line = stdout(&out);
    let min: f64 = line
        .split_whitespace()
        .find_map(|f| f.strip_prefix("min="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(min > 0.0, "{line}");
    assert!(line.contains("argmin="), "{line}");
}

#[test]
fn zero_partial_quotient_is_a_usage_error_with_position() {
    let out = sudler(&["eval", "--alpha", "[0;2,0,(3)]", "--N", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("position 6"), "{err}");
}

#[test]
fn unknown_flag_exits_with_usage_error() {
    let out = sudler(&["eval", "--alpha", "[0;(1)]", "--N", "10", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fc_table_emits_grid_csv() {
    let out = sudler(&[
        "fc-table",
        "--pattern",
        "313131313",
        "--T",
        "400",
        "--m",
        "8",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("epsilon,value"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() > 100, "expected a dense grid, got {}", rows.len());
    // Abscissas ascend in exact milli-steps and values parse as finite.
    let mut prev = f64::NEG_INFINITY;
    for row in &rows {
        let (eps, value) = row.split_once(',').expect("two columns");
        let e: f64 = eps.parse().unwrap();
        let v: f64 = value.parse().unwrap();
        assert!(e > prev && v.is_finite());
        prev = e;
    }
}

#[test]
fn wtable_rows_are_reused_from_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = [
        "wtable",
        "--patterns",
        "313131313,222222222",
        "--T",
        "400",
        "--m",
        "8",
        "--cache",
        cache,
    ];
    let cold = sudler(&args);
    assert!(cold.status.success(), "{}", stderr(&cold));
    assert!(dir.path().join("wcache.jsonl").exists());
    let warm = sudler(&args);
    assert!(warm.status.success(), "{}", stderr(&warm));
    assert_eq!(stdout(&cold), stdout(&warm));
    let text = stdout(&cold);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("pattern,n0,T,m,W,restarts"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    // Rows come back in the order requested.
    assert!(rows[0].starts_with("313131313,20,400,8,"));
    assert!(rows[1].starts_with("222222222,20,400,8,"));
}

#[test]
fn corrupt_cache_line_warns_but_does_not_fail() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("wcache.jsonl"), "{broken\n").unwrap();
    let out = sudler(&[
        "wtable",
        "--patterns",
        "313131313",
        "--T",
        "400",
        "--m",
        "8",
        "--cache",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));
}

fn smoke_verify(extra: &[&str], out_path: &Path) -> Output {
    let mut args = vec!["verify", "--smoke", "--out", out_path.to_str().unwrap()];
    args.extend_from_slice(extra);
    sudler(&args)
}

#[test]
fn smoke_verify_is_reproducible_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let c = dir.path().join("c.json");
    let run_a = smoke_verify(&["--jobs", "1"], &a);
    let run_b = smoke_verify(&["--jobs", "2"], &b);
    let run_c = smoke_verify(&[], &c);
    for (run, path) in [(&run_a, &a), (&run_b, &b), (&run_c, &c)] {
        assert_eq!(run.status.code(), Some(0), "{}", stderr(run));
        assert!(stdout(run).starts_with("PASS "), "{}", stdout(run));
        assert!(path.exists());
    }
    let ja = strip_timing(&std::fs::read_to_string(&a).unwrap());
    let jb = strip_timing(&std::fs::read_to_string(&b).unwrap());
    let jc = strip_timing(&std::fs::read_to_string(&c).unwrap());
    assert_eq!(ja, jb);
    assert_eq!(ja, jc);
    // The summary line repeats the report's own numbers.
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&a).unwrap()).unwrap();
    assert_eq!(report["global_status"], "PASS");
    let zero = report["worst_margins"]["zero"]["value"].as_f64().unwrap();
    assert!(stdout(&run_a).contains(&format!("zero={zero}")), "{}", stdout(&run_a));
}

#[test]
fn verify_subset_by_patterns_prints_json_to_stdout() {
    let out = sudler(&[
        "verify",
        "--smoke",
        "--patterns",
        "111111111,313131313,333333333",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["global_status"], "PASS");
    assert_eq!(report["params"]["t"], 2000);
}

//! End-to-end tests of the fibnorm binary: output formats, exit codes,
//! and the documented examples.

use std::process::{Command, Output};

fn fibnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibnorm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn seq_plain_matches_the_sequence() {
    let out = fibnorm(&["seq", "1", "6"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "1 1 2 3 5 8");
}

#[test]
fn seq_csv_handles_higher_order() {
    let out = fibnorm(&["--format", "csv", "seq", "--k", "3", "1", "4"]);
    assert_eq!(stdout(&out).trim(), "0,1,1,2");
}

#[test]
fn seq_json_single_element() {
    let out = fibnorm(&["--format", "json", "seq", "5", "5"]);
    assert_eq!(stdout(&out).trim(), r#"{"k":2,"values":["5"]}"#);
}

#[test]
fn seq_rejects_bad_bounds() {
    let out = fibnorm(&["seq", "6", "1"]);
    assert_eq!(code(&out), 2);
    let out = fibnorm(&["seq", "--k", "1", "1", "4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn vector_norm_examples() {
    let out = fibnorm(&["vector-norm", "qvec", "5", "--order", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("exact: 12"));

    let out = fibnorm(&["--format", "json", "vector-norm", "qvec", "3", "--order", "-1"]);
    let json: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(json["exact"], "5/2");
    assert_eq!(json["degenerate"], false);

    let out = fibnorm(&["vector-norm", "nrvec", "3", "2", "--order", "inf"]);
    assert!(stdout(&out).contains("exact: 5"));
}

#[test]
fn vector_norm_rejects_zero_real_order() {
    let out = fibnorm(&["vector-norm", "qvec", "5", "--order", "0.0"]);
    assert_eq!(code(&out), 2);
    let out = fibnorm(&["vector-norm", "qvec", "5", "--order", "bogus"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn matrix_norm_reference_values() {
    let out = fibnorm(&["matrix-norm", "smat", "2", "5", "--order", "inf"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("exact: 34"));

    let out = fibnorm(&["matrix-norm", "fmat", "2", "5", "--order", "-inf"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("exact: 0"));
    assert!(stdout(&out).contains("degenerate: true"));

    let out = fibnorm(&["matrix-norm", "fmat", "2", "5", "--order", "1"]);
    assert!(stdout(&out).contains("exact: 26"));
}

#[test]
fn degenerate_infinite_norm_exits_3() {
    let out = fibnorm(&["matrix-norm", "fmat", "2", "5", "--order", "-1"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("degenerate: true"));
}

#[test]
fn matrix_show_prints_the_matrix_and_triangle() {
    let out = fibnorm(&["matrix-norm", "smat", "2", "3", "--order", "1", "--show"]);
    let text = stdout(&out);
    assert!(text.contains("1 1 2"));
    assert!(text.contains("reorganized:"));
    assert!(text.contains("2 2 2"));
    assert!(text.contains("3 3"));

    let out = fibnorm(&["--format", "json", "matrix-norm", "qmat", "2", "5", "--order", "2", "--show"]);
    let mut lines = stdout(&out);
    let first = lines.lines().next().unwrap().to_string();
    let json: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(json["entries"][4][4], "40");
    lines.clear();
}

#[test]
fn verify_single_identity() {
    let out = fibnorm(&["verify", "P2.sum", "--n-range", "1..50"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verified"));
}

#[test]
fn verify_printed_probe_refutes_with_exit_1() {
    let out = fibnorm(&["verify", "Eq6.cubes-as-printed"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("refuted"));
    assert!(text.contains("n=2"));
}

#[test]
fn verify_unknown_id_exits_2() {
    let out = fibnorm(&["verify", "P0.missing"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_json_schema() {
    let out = fibnorm(&["--format", "json", "verify", "P4.cubes", "--n-range", "1..20"]);
    let json: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let report = &json[0];
    assert_eq!(report["id"], "P4.cubes");
    assert_eq!(report["status"], "verified-with-erratum");
    assert!(report["counterexample"]["params"].is_string());
    assert!(report["erratum_note"].is_string());
}

#[test]
fn threshold_report_and_cancellation_case() {
    let out = fibnorm(&["--format", "json", "threshold-p", "5", "0.5"]);
    assert_eq!(code(&out), 0);
    let json: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let p_bound = json["p_bound"].as_f64().unwrap();
    assert!((p_bound - 16.886).abs() < 1e-3, "{p_bound}");
    assert!(json["p_empirical"].as_f64().unwrap() <= p_bound);
    assert!(json["gap_at_bound"].as_f64().unwrap() <= 0.5);

    let out = fibnorm(&["--format", "json", "threshold-p", "2", "1.0"]);
    let json: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!((json["p_bound"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let out = fibnorm(&["threshold-p", "10", "0.001"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn threshold_rejects_degenerate_n() {
    let out = fibnorm(&["threshold-p", "1", "0.5"]);
    assert_eq!(code(&out), 2);
    let out = fibnorm(&["threshold-p", "5", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn distance_examples() {
    let out = fibnorm(&["--format", "json", "distance", "1", "3", "2", "1"]);
    let json: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(json["exact"], "10");
    assert_eq!(json["closed_form"], "10");

    let out = fibnorm(&["--format", "json", "distance", "1", "3", "2", "2"]);
    let json: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(json["parallelogram_lhs"], "224");
    assert_eq!(json["parallelogram_rhs"], "224");
    let rel = json["rel_err"].as_f64().unwrap();
    assert!((rel - 0.0176).abs() < 0.001, "{rel}");

    // no closed form away from d = 2, 3
    let out = fibnorm(&["--format", "json", "distance", "1", "3", "4", "1"]);
    let json: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(json["closed_form"].is_null());
    assert!(json["exact"].is_string());
}

#[test]
fn bench_csv_has_equal_digests_per_quantity() {
    let out = fibnorm(&[
        "--format", "csv", "--seed", "11", "bench", "--sizes", "2000", "--reps", "3",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "quantity,n,strategy,median_ns,digest");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4); // two quantities x two strategies
    for pair in rows.chunks(2) {
        assert_eq!(pair[0][0], pair[1][0], "same quantity");
        assert_eq!(pair[0][4], pair[1][4], "digests must agree");
        assert_ne!(pair[0][2], pair[1][2], "strategies differ");
    }
}

#[test]
fn json_outputs_round_trip() {
    for args in [
        vec!["--format", "json", "seq", "1", "10"],
        vec!["--format", "json", "vector-norm", "qvec", "8", "--order", "2"],
        vec!["--format", "json", "matrix-norm", "smat", "2", "4", "--order", "0"],
        vec!["--format", "json", "verify", "P31.S-inf", "--n-range", "1..10"],
        vec!["--format", "json", "threshold-p", "5", "0.5"],
        vec!["--format", "json", "distance", "2", "4", "3", "2"],
    ] {
        let out = fibnorm(&args);
        let text = stdout(&out);
        let parsed: serde_json::Value = serde_json::from_str(text.trim()).expect("valid json");
        let rendered = serde_json::to_string(&parsed).unwrap();
        let reparsed: serde_json::Value = serde_json::from_str(&rendered).unwrap();
        assert_eq!(parsed, reparsed, "round trip for {args:?}");
    }
}

#[test]
fn precision_flag_and_env_are_honored() {
    // low precision still answers (values are small here)
    let out = fibnorm(&["--precision", "64", "vector-norm", "qvec", "5", "--order", "2"]);
    assert_eq!(code(&out), 0);

    let out = Command::new(env!("CARGO_BIN_EXE_fibnorm"))
        .env("FIBNORM_PRECISION", "192")
        .args(["--format", "json", "threshold-p", "5", "0.5"])
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_all_is_clean_on_a_narrow_range() {
    // narrow ranges keep this end-to-end test fast; the full default run
    // is covered by the library acceptance suite
    let out = fibnorm(&["verify", "all", "--n-range", "1..8", "--r-range", "1..4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.matches("verified-with-erratum").count(), 4);
    assert!(!text.contains("] refuted"));
}

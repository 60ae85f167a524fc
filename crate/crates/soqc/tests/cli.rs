//! End-to-end tests of the command-line binary: report stability,
//! golden comparison, exit codes, and the auxiliary subcommands.

use std::process::{Command, Output};

fn soqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_soqc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn full_report_matches_golden() {
    let out = soqc(&["verify", "--p", "3", "--r", "1", "--l", "2", "--checks", "all"]);
    assert!(out.status.success(), "verify failed: {}", stderr(&out));
    let golden = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/golden/verify-q3-l2.json"
    ))
    .expect("frozen golden file");
    assert_eq!(stdout(&out), golden, "report drifted from the frozen golden file");
}

#[test]
fn json_is_byte_stable_across_runs_and_parallelism() {
    let base = ["verify", "--p", "3", "--r", "1", "--l", "4", "--checks", "weyl-only"];
    let a = soqc(&base);
    assert!(a.status.success(), "first run failed: {}", stderr(&a));
    let mut with_jobs: Vec<&str> = base.to_vec();
    with_jobs.extend(["--jobs", "3"]);
    let b = soqc(&with_jobs);
    assert!(b.status.success(), "second run failed: {}", stderr(&b));
    assert_eq!(stdout(&a), stdout(&b), "report bodies differ across runs or parallelism");
}

#[test]
fn weyl_only_scales_to_rank_six() {
    let out = soqc(&["verify", "--p", "3", "--r", "1", "--l", "6", "--checks", "weyl-only"]);
    assert!(out.status.success(), "weyl-only at l = 6 failed: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let mut statuses = std::collections::BTreeMap::new();
    for c in v["checks"].as_array().expect("checks array") {
        statuses.insert(
            c["name"].as_str().unwrap().to_string(),
            c["status"].as_str().unwrap().to_string(),
        );
    }
    assert_eq!(statuses["theta-partition-4.6"], "pass");
    assert_eq!(statuses["partition-4.7"], "pass");
    assert_eq!(statuses["qwv-membership-7.2"], "pass");
    assert_eq!(statuses["uppertriangular-4.8"], "skipped");
    let detail = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "uppertriangular-4.8")
        .unwrap()["detail"]
        .as_str()
        .unwrap()
        .to_string();
    assert!(detail.starts_with("resource-limit:"), "skip without reason: {detail}");
}

#[test]
fn invalid_rho_is_rejected_before_any_work() {
    let t0 = std::time::Instant::now();
    let out = soqc(&["verify", "--p", "3", "--r", "1", "--l", "2", "--rho", "1"]);
    assert_eq!(out.status.code(), Some(2), "expected exit code 2");
    assert!(stderr(&out).contains("nonsquare"), "unexpected message: {}", stderr(&out));
    assert!(t0.elapsed().as_secs_f64() < 5.0, "rejection was not fast");
}

#[test]
fn unknown_check_name_is_rejected() {
    let out = soqc(&["verify", "--p", "3", "--r", "1", "--l", "2", "--checks", "no-such"]);
    assert_eq!(out.status.code(), Some(2), "expected exit code 2");
    assert!(stderr(&out).contains("unknown check name"), "message: {}", stderr(&out));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let path = std::env::temp_dir().join("soqc-cli-out-test.json");
    let _ = std::fs::remove_file(&path);
    let out = soqc(&[
        "verify",
        "--p",
        "3",
        "--r",
        "1",
        "--l",
        "2",
        "--checks",
        "weyl-only",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "verify failed: {}", stderr(&out));
    assert!(stdout(&out).is_empty(), "stdout should be empty with --out");
    let body = std::fs::read_to_string(&path).expect("report file written");
    assert!(body.starts_with('{') && body.ends_with('\n'));
    std::fs::remove_file(&path).ok();
}

#[test]
fn table_subcommand_prints_the_character_table() {
    let out = soqc(&["table", "--p", "3", "--r", "1", "--group", "so-even", "--size", "2"]);
    assert!(out.status.success(), "table failed: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("Group order 720, 14 conjugacy classes."), "got: {text}");
    let out = soqc(&[
        "table", "--p", "3", "--r", "1", "--group", "gl", "--size", "2", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["order"], 48);
    assert_eq!(v["rows"].as_array().unwrap().len(), v["classes"].as_array().unwrap().len());
}

#[test]
fn gamma_subcommand_prints_defined_values() {
    let out = soqc(&["gamma", "--p", "3", "--r", "1", "--l", "2"]);
    assert!(out.status.success(), "gamma failed: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let entries = v["gamma"].as_array().expect("gamma array");
    assert!(!entries.is_empty());
    for e in entries {
        let val = e["value"].as_str().unwrap();
        assert!(!val.starts_with("undefined"), "undefined gamma: {e}");
        assert!(e["pairs_checked"].as_u64().unwrap() >= 16);
    }
}

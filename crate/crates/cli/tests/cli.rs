//! End-to-end tests of the binary: output bytes, exit codes, and the
//! format/guard flags, driven through std::process.

use std::process::{Command, Output};

fn permrun(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permrun"))
        .args(args)
        .env_remove("PERMRUN_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn run_table_csv_matches_the_golden_row() {
    let out = permrun(&["table", "runs", "--n", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n,k,count\n4,1,2\n4,2,12\n4,3,10\n");
}

#[test]
fn t_table_without_pair_index_is_a_usage_error() {
    let out = permrun(&["table", "t", "--n", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--j"));
}

#[test]
fn table_guard_refuses_and_lifts_with_max_n() {
    let refused = permrun(&["table", "runs", "--n", "4", "--max-n", "3"]);
    assert_eq!(refused.status.code(), Some(3));
    assert!(stderr(&refused).contains("limit"));
    let lifted = permrun(&["table", "runs", "--n", "4", "--max-n", "4", "--format", "csv"]);
    assert_eq!(lifted.status.code(), Some(0));
    assert!(stdout(&lifted).ends_with("4,3,10\n"));
}

#[test]
fn audit_guard_refuses_and_lifts_with_max_pairs() {
    let refused =
        permrun(&["verify", "phi-audit", "--n", "4", "--k", "2", "--max-pairs", "10"]);
    assert_eq!(refused.status.code(), Some(3));
    let lifted =
        permrun(&["verify", "phi-audit", "--n", "4", "--k", "2", "--max-pairs", "200"]);
    assert_eq!(lifted.status.code(), Some(0));
}

#[test]
fn identical_invocations_are_byte_identical_without_elapsed() {
    let args = ["verify", "divisibility", "--n", "6", "--format", "json", "--no-elapsed"];
    let first = permrun(&args);
    let second = permrun(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&second));
    assert!(!stdout(&first).contains("elapsed"));
}

#[test]
fn json_counts_are_exact_decimal_strings() {
    let out = permrun(&["table", "descents", "--n", "8", "--format", "json", "--no-elapsed"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = value["payload"]["rows"].as_array().unwrap();
    assert_eq!(rows[1]["k"], 1);
    assert_eq!(rows[1]["count"], "247");
    assert_eq!(value["payload"]["total"], "40320");
}

#[test]
fn draw_renders_the_worked_staircase() {
    let out = permrun(&["draw", "--perm", "243165", "--no-elapsed"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "H1 H1 V2 V1 H1 V5\n\
         \u{20}           +\n\
         \u{20}           |5\n\
         \u{20}       +-1-+\n\
         \u{20}       |1\n\
         \u{20}       +\n\
         \u{20}       |2\n\
         +-1-+-1-+\n"
    );
}

#[test]
fn draw_requires_exactly_one_input() {
    let both = permrun(&["draw", "--perm", "123", "--path", "[]"]);
    assert_eq!(both.status.code(), Some(2));
    let neither = permrun(&["draw"]);
    assert_eq!(neither.status.code(), Some(2));
}

#[test]
fn draw_rejects_a_path_that_breaks_the_label_conditions() {
    let out = permrun(&["draw", "--path", r#"[{"dir":"H","label":1},{"dir":"V","label":2}]"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("invalid path"));
}

#[test]
fn verify_all_passes_end_to_end() {
    let out = permrun(&["verify", "all", "--n", "6", "--no-elapsed"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.ends_with("all: PASS\n"));
    assert!(text.contains("runs = 2 descents + 1"));
    assert!(text.contains("quasi-injection at (k = 4, odd-horizontal)"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn restriction_names_and_aliases_parse() {
    for restriction in ["V", "even-horizontal"] {
        let out = permrun(&[
            "verify",
            "phi-audit",
            "--n",
            "5",
            "--k",
            "1",
            "--restriction",
            restriction,
        ]);
        assert_eq!(out.status.code(), Some(0), "--restriction {restriction}");
    }
    let vprime = permrun(&["verify", "phi-audit", "--n", "5", "--k", "1", "--restriction", "V-prime"]);
    assert_eq!(vprime.status.code(), Some(0));
}

#[test]
fn environment_variable_sets_the_default_format() {
    let out = Command::new(env!("CARGO_BIN_EXE_permrun"))
        .args(["table", "runs", "--n", "3"])
        .env("PERMRUN_FORMAT", "csv")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n,k,count\n3,1,2\n3,2,4\n");
}

#[test]
fn verification_csv_lists_check_outcomes() {
    let out = permrun(&["verify", "trivi", "--n", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("check,outcome\n"));
    assert!(text.lines().nth(1).unwrap().ends_with(",ok"));
}

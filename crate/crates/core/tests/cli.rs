use std::process::{Command, Output};

use plethyverify::maps::{VerificationReport, REPORT_SCHEMA};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plethyverify")).args(args).env_remove("PLETHY_JOBS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn hook_example_passes_with_three_reports() {
    let o = run(&["--json", "verify", "hook", "--M", "1", "--N", "2", "--d", "2", "--field", "GF(2),GF(3),Q"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], REPORT_SCHEMA);
    assert_eq!(v["reports"].as_array().unwrap().len(), 3);
}

#[test]
fn catalan_and_character_examples() {
    let o = run(&["catalan", "--layers", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("count: 5"));
    let o = run(&["character", "--M", "1", "--N", "2", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("q+2q²+2q³+2q⁴+q⁵, EQUAL"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["tableaux", "--shape", "2,1", "--max-entry", "2"]).status.code(), Some(0));
    // Over the finite group SL2(GF(2)) an invertible intertwiner exists, so this check fails.
    assert_eq!(run(&["counterexample", "char2-sym"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "hook", "--field", "GF(4)", "--N", "1", "--d", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn out_file_and_json_round_trip() {
    let dir = std::env::temp_dir().join(format!("plethyverify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = run(&["--json", "--out", path.to_str().unwrap(), "verify", "wronskian", "--N", "0..2", "--d", "1", "--field", "Q,GF(2)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let reports: Vec<VerificationReport> = serde_json::from_value(v["reports"].clone()).unwrap();
    assert_eq!(reports.len(), 6);
    assert!(reports.iter().all(|r| r.kind == "wronskian" && r.passed() && r.elapsed_ms.is_none()));
    assert_eq!(serde_json::to_value(&reports).unwrap(), v["reports"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let args = |jobs: &'static str| ["--jobs", jobs, "verify", "trinomial", "--M", "0..1", "--N", "0..2", "--d", "0..1", "--field", "Q,GF(3)"];
    let one = run(&args("1"));
    let four = run(&args("4"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&four));
}

#[test]
fn large_primes_use_a_fixed_generator_set() {
    let o = run(&["verify", "hook", "--M", "1", "--N", "2", "--d", "2", "--field", "GF(1000000007),GF(2305843009213693951)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2 reports, 0 failed"));
}

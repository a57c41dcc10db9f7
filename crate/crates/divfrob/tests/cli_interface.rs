//! End-to-end checks of the compiled binary: flag parsing, exit codes,
//! output formats, and agreement with the published matrices.

mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use divfrob::cli::JsonReport;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_divfrob"))
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn quintic_args() -> Vec<String> {
    vec![
        "--p".into(),
        "17".into(),
        "--n".into(),
        "3".into(),
        "--f".into(),
        " -120,274,-225,85,-15,1".into(),
    ]
}

fn temp_path(stem: &str) -> PathBuf {
    std::env::temp_dir().join(format!("divfrob-{stem}-{}.json", std::process::id()))
}

#[test]
fn golden_quintic_reaches_stdout_as_json() {
    let mut args = quintic_args();
    args.extend(["--format".into(), "json".into()]);
    let output = binary().args(&args).output().expect("binary runs");
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr_of(&output));

    let report: JsonReport = serde_json::from_str(stdout_of(&output).trim()).unwrap();
    assert_eq!((report.p, report.n, report.l, report.r, report.g), (17, 3, 5, 2, 4));
    assert_eq!(report.order, "filtration");
    assert_eq!(report.basis.len(), 8);
    assert_eq!(report.matrix, common::golden_17());
    assert_eq!(report.det_hw, 0);
    assert!(report.det_full_nonzero);
    assert_eq!(report.checks.determinant_nonzero, Some(true));
}

#[test]
fn emitted_json_round_trips_bytewise() {
    let mut args = quintic_args();
    args.extend(["--format".into(), "json".into()]);
    let output = binary().args(&args).output().expect("binary runs");
    let emitted = stdout_of(&output);

    let report: JsonReport = serde_json::from_str(emitted.trim()).unwrap();
    let reserialized = serde_json::to_string(&report).unwrap();
    assert_eq!(format!("{reserialized}\n"), emitted);
}

#[test]
fn isotypic_septic_matches_the_regrouped_matrix() {
    let septic: Vec<String> = common::SEPTIC.iter().map(i64::to_string).collect();
    let output = run(&[
        "--p",
        "13",
        "--n",
        "4",
        "--f",
        &septic.join(","),
        "--order",
        "isotypic",
        "--format",
        "json",
    ]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr_of(&output));
    let report: JsonReport = serde_json::from_str(stdout_of(&output).trim()).unwrap();
    assert_eq!(report.order, "isotypic");
    assert_eq!(report.matrix, common::grouped_13());
}

#[test]
fn text_and_json_describe_the_same_matrix() {
    let json_output = {
        let mut args = quintic_args();
        args.extend(["--format".into(), "json".into()]);
        binary().args(&args).output().expect("binary runs")
    };
    let text_output = binary().args(quintic_args()).output().expect("binary runs");
    assert_eq!(text_output.status.code(), Some(0));

    let report: JsonReport = serde_json::from_str(stdout_of(&json_output).trim()).unwrap();

    let text = stdout_of(&text_output);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p: 17"));
    let matrix: Vec<Vec<u64>> = lines
        .skip_while(|line| *line != "matrix:")
        .skip(1)
        .take_while(|line| *line != "checks:")
        .map(|line| line.split(' ').map(|cell| cell.parse().unwrap()).collect())
        .collect();
    assert_eq!(matrix, report.matrix);
}

#[test]
fn csv_emits_exactly_the_matrix() {
    let mut args = quintic_args();
    args.extend(["--format".into(), "csv".into()]);
    let output = binary().args(&args).output().expect("binary runs");
    assert_eq!(output.status.code(), Some(0));

    let rows: Vec<Vec<u64>> = stdout_of(&output)
        .lines()
        .map(|line| line.split(',').map(|cell| cell.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows, common::golden_17());

    args.extend(["--block".into(), "hw".into()]);
    let output = binary().args(&args).output().expect("binary runs");
    let stdout = stdout_of(&output);
    let rows: Vec<&str> = stdout.lines().collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0].split(',').count(), 4);
}

#[test]
fn spec_file_is_equivalent_to_flags() {
    let path = temp_path("jobspec");
    std::fs::write(&path, r#"{"p":17,"n":3,"f":[-120,274,-225,85,-15,1]}"#).unwrap();
    let from_file = run(&["--spec", path.to_str().unwrap()]);
    let from_flags = binary().args(quintic_args()).output().expect("binary runs");
    std::fs::remove_file(&path).ok();

    assert_eq!(from_file.status.code(), Some(0), "stderr: {}", stderr_of(&from_file));
    assert_eq!(stdout_of(&from_file), stdout_of(&from_flags));
}

#[test]
fn spec_file_conflicts_with_explicit_flags() {
    let path = temp_path("conflict");
    std::fs::write(&path, r#"{"p":17,"n":3,"f":[-120,274,-225,85,-15,1]}"#).unwrap();
    let output = run(&["--spec", path.to_str().unwrap(), "--p", "17"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn degenerate_curve_reports_and_exits_two() {
    let output = run(&["--p", "5", "--n", "2", "--f", "0,1"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stdout_of(&output).is_empty());
    assert!(stderr_of(&output).contains("invalid curve"));
}

#[test]
fn unparseable_arguments_exit_one() {
    let output = run(&["--p", "banana", "--n", "3", "--f", "1,1,1"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(!stderr_of(&output).is_empty());
}

#[test]
fn bench_sweep_prints_one_line_per_prime() {
    let output = run(&["--bench"]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = stdout_of(&output);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 3);
    for (line, p) in lines.iter().zip([101, 211, 401]) {
        assert!(line.starts_with(&format!("p={p} ")), "line: {line}");
        assert!(line.contains("hw_ms="), "line: {line}");
        assert!(line.contains("det_hw="), "line: {line}");
    }
}

#[test]
fn check_switches_accept_both_value_spellings() {
    let mut args = quintic_args();
    args.extend(["--oracle".into(), "on".into()]);
    let output = binary().args(&args).output().expect("binary runs");
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr_of(&output));
    assert!(stdout_of(&output).contains("oracle_match: pass"));

    let mut args = quintic_args();
    args.extend(["--oracle=on".into(), "--format".into(), "json".into()]);
    let output = binary().args(&args).output().expect("binary runs");
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr_of(&output));
    let report: JsonReport = serde_json::from_str(stdout_of(&output).trim()).unwrap();
    assert_eq!(report.checks.oracle_match, Some(true));
    assert_eq!(report.matrix, common::golden_17());
}

#[test]
fn checks_off_suppresses_the_report() {
    let mut args = quintic_args();
    args.extend(["--checks".into(), "off".into(), "--format".into(), "json".into()]);
    let output = binary().args(&args).output().expect("binary runs");
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr_of(&output));
    let report: JsonReport = serde_json::from_str(stdout_of(&output).trim()).unwrap();
    assert_eq!(report.checks.lift_relation, None);
    assert_eq!(report.checks.determinant_nonzero, None);
    assert_eq!(report.checks.oracle_match, None);

    let output = run(&["--p", "17", "--n", "3", "--f", "1,1,1", "--checks", "maybe"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("expected 'on' or 'off'"));
}

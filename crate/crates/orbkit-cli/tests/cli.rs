//! End-to-end runs of the binary against the shipped fixtures.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use orbkit_cli::report::Report;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn orbkit_in(root: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbkit")).args(args).env("ORBKIT_FIXTURES", root).output().expect("binary runs")
}

fn orbkit(args: &[&str]) -> Output {
    orbkit_in(&fixtures(), args)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn fibonacci_tv_of_the_three_sphere() {
    let s3 = fixtures().join("s3_two_tet.json");
    let fib = fixtures().join("fib.json");
    let out = orbkit(&["tv", s3.to_str().unwrap(), fib.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("value = (5-√5)/10"), "{}", stdout(&out));
}

#[test]
fn dual_numbers_fail_separability() {
    let out = orbkit(&["check-frobenius", "dualnumbers"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("separable ✗"), "{text}");
    assert!(text.contains("FAIL: separable"), "{text}");
}

#[test]
fn empty_move_list_is_trivially_invariant() {
    let out = orbkit(&["pachner", "--moves", "0", "torus_three_vertex", "q_z2_gamma"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("invariant ✓"));
}

#[test]
fn machine_reports_round_trip_byte_identically() {
    for args in [
        &["tv", "s3_two_tet", "fib"][..],
        &["check-frobenius", "dualnumbers"],
        &["check-pair", "pair_toric_e_m_twisted_product"],
        &["qdim", "column_mat2"],
        &["state-space", "circle3", "q_z2_gamma"],
    ] {
        let out = orbkit(&[&["--json"], args].concat());
        let text = stdout(&out);
        let report: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(format!("{}\n", report.to_json()), text, "{args:?}");
        assert_eq!(out.status.code(), Some(report.exit_code()), "{args:?}");
    }
}

#[test]
fn mismatched_schema_version_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixtures().join("q_z2.json")).unwrap();
    let bumped = text.replacen("\"schema_version\": 1", "\"schema_version\": 2", 1);
    assert_ne!(text, bumped);
    std::fs::write(dir.path().join("q_z2.json"), bumped).unwrap();
    let out = orbkit_in(dir.path(), &["check-frobenius", "q_z2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("schema version 2 is not supported"), "{}", stderr(&out));
}

#[test]
fn unknown_commands_and_missing_fixtures_are_errors() {
    assert_eq!(orbkit(&["no-such-command"]).status.code(), Some(2));
    let out = orbkit(&["tv", "s3_two_tet", "no_such_fixture"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not found"), "{}", stderr(&out));
    let out = orbkit(&["tv", "s3_two_tet", "q_z2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("expected a fusion fixture, found algebra"), "{}", stderr(&out));
}

#[test]
fn json_references_resolve_next_to_the_referencing_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixtures().join("q_z2_gamma.json"), dir.path().join("local_algebra.json")).unwrap();
    let text = std::fs::read_to_string(fixtures().join("regular_q_z2.json")).unwrap();
    let local = text.replace("\"q_z2_gamma\"", "\"local_algebra.json\"");
    std::fs::write(dir.path().join("line.json"), local).unwrap();
    let empty = tempfile::tempdir().unwrap();
    let out = orbkit_in(empty.path(), &["qdim", dir.path().join("line.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn written_gamma_reloads_as_a_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gamma.json");
    assert_eq!(orbkit(&["gamma", "q_z2", "-o", path.to_str().unwrap()]).status.code(), Some(0));
    let out = orbkit(&["--json", "ew", "roundtrip", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn suite_passes_and_is_deterministic() {
    let first = orbkit(&["--json", "suite"]);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    let report: Report = serde_json::from_str(&stdout(&first)).unwrap();
    assert!(report.checks.len() >= 50);
    assert_eq!(stdout(&orbkit(&["--json", "suite"])), stdout(&first));
}

use std::path::Path;
use std::process::{Command, Output};

use shagraph::cli::fixtures::{fixture, fixtures};
use shagraph::cli::{Report, Status};

fn shagraph(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_shagraph"));
    cmd.args(args).env_remove("SHAGRAPH_MAX_GROUP_ORDER");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn run_on(dir: &Path, command: &str, input: &[u8], env: &[(&str, &str)]) -> (i32, Report) {
    let (inp, out) = (dir.join("in.json"), dir.join("out.json"));
    std::fs::write(&inp, input).unwrap();
    let output = shagraph(
        &[command, "--in", inp.to_str().unwrap(), "--out", out.to_str().unwrap()],
        env,
    );
    let report: Report = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    (output.status.code().unwrap(), report)
}

fn only_in_and_out(dir: &Path) {
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names, ["in.json", "out.json"]);
}

#[test]
fn every_fixture_succeeds_through_the_binary() {
    for f in fixtures() {
        let dir = tempfile::tempdir().unwrap();
        let (code, report) = run_on(dir.path(), f.command, &f.input_bytes(), &[]);
        assert_eq!(code, 0, "{}: {:?}", f.name, report.failure);
        assert_eq!(report.status, Status::Ok);
        assert_eq!(report.input_digest, f.digest());
        assert!(f.mismatches(&report.result).is_empty(), "{}", f.name);
        only_in_and_out(dir.path());
    }
}

#[test]
fn malformed_input_exits_with_2_and_still_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report) = run_on(dir.path(), "snf", b"{ not json", &[]);
    assert_eq!(code, 2);
    assert_eq!(report.status, Status::InvalidInput);
    assert!(report.failure.is_some());
    only_in_and_out(dir.path());
}

#[test]
fn group_order_bound_exits_with_4() {
    let f = fixture("biquadratic-norm-one").unwrap();
    let dir = tempfile::tempdir().unwrap();
    let (code, report) = run_on(dir.path(), f.command, &f.input_bytes(), &[("SHAGRAPH_MAX_GROUP_ORDER", "2")]);
    assert_eq!(code, 4);
    assert_eq!(report.status, Status::LimitExceeded);
    only_in_and_out(dir.path());
}

#[test]
fn an_existing_report_is_replaced() {
    let f = fixture("triangle").unwrap();
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("out.json"), "stale").unwrap();
    let (code, report) = run_on(dir.path(), f.command, &f.input_bytes(), &[]);
    assert_eq!(code, 0);
    assert_eq!(report.command, f.command);
}

#[test]
fn unknown_command_and_missing_paths_exit_with_2() {
    assert_eq!(shagraph(&["frobnicate", "--in", "a", "--out", "b"], &[]).status.code(), Some(2));
    assert_eq!(shagraph(&["snf"], &[]).status.code(), Some(2));
}

#[test]
fn fixtures_are_listed_and_exported() {
    let listing = shagraph(&["fixtures"], &[]);
    assert!(listing.status.success());
    assert_eq!(String::from_utf8(listing.stdout).unwrap().lines().count(), fixtures().len());
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("inputs");
    assert!(shagraph(&["fixtures", "--out", out.to_str().unwrap()], &[]).status.success());
    for f in fixtures() {
        assert_eq!(std::fs::read(out.join(format!("{}.json", f.name))).unwrap(), f.input_bytes());
    }
}

//! Drives the compiled binary end to end: happy paths, the failing-fixture
//! exit code, and argument rejection.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_membrane-bench"))
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn run_writes_outputs_and_reports_probes() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["run"])
        .arg(config("pure-bending.toml"))
        .args(["--out", dir.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("probe sigma1_M"), "missing probe line:\n{text}");
    for f in ["probes.csv", "fields.csv", "solution.vtk", "trace.csv", "resolved.toml", "profile.csv"] {
        assert!(dir.path().join(f).is_file(), "missing output {f}");
    }
}

#[test]
fn run_exits_nonzero_when_expectations_fail() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["run"])
        .arg(config("blanket.toml"))
        .args(["--out", dir.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert!(!out.status.success(), "known-discrepant fixture must fail its expectations");
    let all = format!("{}{}", stdout(&out), String::from_utf8_lossy(&out.stderr));
    assert!(all.contains("FAILED"), "no expectation report in output:\n{all}");
}

#[test]
fn mesh_override_changes_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["run"])
        .arg(config("pure-bending.toml"))
        .args(["--mesh", "7x3", "--out", dir.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("mesh 7x3"));
}

#[test]
fn sweep_solves_each_value_and_prints_a_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["sweep"])
        .arg(config("pure-bending.toml"))
        .args(["--param", "eta", "--values", "1e-6,1e-4"])
        .args(["--out", dir.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("sweep summary"));
    assert!(Path::new(dir.path()).join("eta-1e-6").join("probes.csv").is_file());
    assert!(Path::new(dir.path()).join("eta-1e-4").join("probes.csv").is_file());
}

#[test]
fn verify_suite_passes() {
    let out = bin().arg("verify").output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 4, "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn reference_table_prints_band_and_profile() {
    let out = bin().args(["reference", "pure-bending", "--ratio", "0.8"]).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("band height h/H = 0.7"), "{text}");
    assert!(text.lines().count() > 20);
}

#[test]
fn bad_inputs_are_rejected() {
    let out = bin().args(["run", "does-not-exist.toml"]).output().unwrap();
    assert!(!out.status.success());

    let out = bin()
        .args(["sweep"])
        .arg(config("pure-bending.toml"))
        .args(["--param", "thickness", "--values", "1"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("thickness"));

    let out = bin()
        .args(["run"])
        .arg(config("pure-bending.toml"))
        .args(["--mesh", "0x4"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}

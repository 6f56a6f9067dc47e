//! End-to-end checks of the `ncphase` binary: output contracts, scenario
//! handling, and exit codes.

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

fn ncphase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncphase"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON object")
}

fn write_scenario(dir: &Path, body: &str) -> String {
    let path = dir.join("scenario.toml");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn repro_is_byte_identical_across_runs_and_fast() {
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let first = ncphase(&["repro", "--no-timestamp", "--out", dir1.path().to_str().unwrap()]);
    let second = ncphase(&["repro", "--no-timestamp", "--out", dir2.path().to_str().unwrap()]);
    let elapsed = start.elapsed();
    assert!(first.status.success() && second.status.success());
    assert_eq!(first.stdout, second.stdout);
    for name in ["repro.csv", "repro.json"] {
        let a = std::fs::read(dir1.path().join(name)).unwrap();
        let b = std::fs::read(dir2.path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
    assert!(elapsed < Duration::from_secs(5), "two repro runs took {elapsed:?}");
}

#[test]
fn empty_scenario_resolves_to_the_benchmark_geometry() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), "");
    let v = json(&ncphase(&["phase", "--scenario", &path, "--format", "json", "--no-timestamp"]));
    assert_eq!(v["scenario"]["a"], 5.0);
    assert_eq!(v["scenario"]["x0"], 30.0);
    assert_eq!(v["scenario"]["y0"], 8.0);
    assert_eq!(v["scenario"]["b0"], 10.0);
    assert_eq!(v["scenario"]["v"], 2e8);
    assert_eq!(v["scenario"]["epsilon"], 1e-4);
    assert_eq!(v["theta_source"], "bound-default");
}

#[test]
fn partial_override_keeps_unlisted_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), "[field]\nb0_tesla = 20.0\n");
    let v = json(&ncphase(&["phase", "--scenario", &path, "--format", "json", "--no-timestamp"]));
    assert_eq!(v["scenario"]["b0"], 20.0);
    assert_eq!(v["scenario"]["a"], 5.0);
}

#[test]
fn negative_radius_fails_validation_with_a_clear_message() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), "[field]\na_m = -1.0\n");
    let out = ncphase(&["phase", "--scenario", &path]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("radius must be positive"), "stderr: {err}");
}

#[test]
fn unknown_scenario_keys_are_rejected_by_name() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), "[field]\nb0_gauss = 10.0\n");
    let out = ncphase(&["phase", "--scenario", &path]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("b0_gauss"), "stderr: {err}");
}

#[test]
fn missing_scenario_file_is_a_validation_error() {
    let out = ncphase(&["phase", "--scenario", "/no/such/file.toml"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("cannot read scenario"), "stderr: {err}");
}

#[test]
fn bound_reports_the_published_energy_scale() {
    let v = json(&ncphase(&["bound", "--format", "json", "--no-timestamp"]));
    let tev = v["result"]["energy_scale_tev"].as_f64().unwrap();
    assert!((tev - 0.13).abs() < 0.013, "energy scale {tev} TeV");
    assert!(v["result"]["theta_m2"].as_f64().unwrap() > 0.0);
}

#[test]
fn nullity_finds_three_null_configurations_and_flags_the_control() {
    let v = json(&ncphase(&["nullity", "--format", "json", "--no-timestamp"]));
    let reports = v["result"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 4);
    let nulls: Vec<_> = reports.iter().filter(|r| r["verdict"] == "Null").collect();
    assert_eq!(nulls.len(), 3);
    assert_eq!(reports[3]["verdict"], "NotNull");
}

#[test]
fn verify_at_zero_theta_marks_undefined_ratios() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(dir.path(), "[nc]\ntheta_m2 = 0.0\n");
    let table = ncphase(&["verify", "--scenario", &path, "--no-timestamp"]);
    assert!(table.status.success());
    assert!(String::from_utf8(table.stdout).unwrap().contains("N/A"));

    let v = json(&ncphase(&["verify", "--scenario", &path, "--format", "json", "--no-timestamp"]));
    let rows = v["result"]["rows"].as_array().unwrap();
    let by_name = |n: &str| rows.iter().find(|r| r["name"] == n).unwrap();
    assert!(by_name("total-phase")["ratio"].is_null());
    assert_eq!(by_name("geometric-bracket")["ratio"], 1.0);
}

#[test]
fn star_check_passes_on_the_default_scenario() {
    let out = ncphase(&["star-check", "--no-timestamp"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("pass"));
    assert!(!text.contains("fail"));
}

#[test]
fn nonpositive_tolerance_is_rejected() {
    let out = ncphase(&["phase", "--tol=-1e-9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn csv_output_is_crlf_with_header_and_full_precision() {
    let out = ncphase(&["phase", "--format", "csv", "--no-timestamp"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("section,key,value,unit\r\n"));
    assert_eq!(text.matches('\n').count(), text.matches("\r\n").count());
    assert!(text.contains("scenario,a,5.0000000000000000e0,m"));
}

#[test]
fn timestamps_appear_unless_suppressed() {
    let stamped = json(&ncphase(&["phase", "--format", "json"]));
    assert!(stamped["generated_at"].as_str().unwrap().ends_with('Z'));
    let quiet = json(&ncphase(&["phase", "--format", "json", "--no-timestamp"]));
    assert!(quiet.get("generated_at").is_none());
}

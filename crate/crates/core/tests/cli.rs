//! Command-line contract: exit codes, manifests and study files.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn uavscf(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uavscf"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env("UAVSCF_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn small_config(dir: &Path) -> String {
    let path = dir.join("cfg.json");
    fs::write(
        &path,
        r#"{"n": 3000, "s_m": 1.0, "v_mps": 1.0, "t0_s": 3.5, "h_m": 0.001, "c0": 0.05, "c2": 0.05, "c5": 0.05}"#,
    )
    .unwrap();
    path.to_string_lossy().into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn analytic_reports_thresholds_and_manifest() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("a");
    let o = uavscf(&["analytic"], &out);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("x1*") && text.contains("x2*") && text.contains("k_th") && text.contains("N(J)"));
    let manifest: serde_json::Value = serde_json::from_slice(&fs::read(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["subcommand"], "analytic");
    assert_eq!(manifest["config"]["t0_s"], 400.0);
    let report: serde_json::Value = serde_json::from_slice(&fs::read(out.join("analytic.json")).unwrap()).unwrap();
    assert!(report["details"]["x1_relative_disagreement"].as_f64().unwrap() <= 1e-9);
    assert!(out.join("profile.csv").exists());
}

#[test]
fn planar_report_mentions_vertical_leg() {
    let tmp = TempDir::new().unwrap();
    let o = uavscf(&["analytic", "--dim", "2d"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("h/v"));
}

#[test]
fn flight_range_violation_exits_2_naming_constraint() {
    let tmp = TempDir::new().unwrap();
    let cfg = tmp.path().join("bad.json");
    fs::write(&cfg, r#"{"s_m": 5000.0}"#).unwrap();
    let o = uavscf(&["analytic", "--config", cfg.to_str().unwrap()], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("flight-range"), "{}", stderr(&o));
}

#[test]
fn zero_trials_exit_2() {
    let tmp = TempDir::new().unwrap();
    let cfg = small_config(tmp.path());
    let o = uavscf(&["simulate", "--config", &cfg, "--trials", "0"], &tmp.path().join("s"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_config_exits_3() {
    let tmp = TempDir::new().unwrap();
    let o = uavscf(&["simulate", "--config", "/nonexistent/cfg.json"], tmp.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("/nonexistent/cfg.json"));
}

#[test]
fn unwritable_output_exits_3() {
    let tmp = TempDir::new().unwrap();
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let o = uavscf(&["analytic"], &blocker.join("sub"));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn malformed_spec_reports_line_and_field() {
    let tmp = TempDir::new().unwrap();
    let spec = tmp.path().join("spec.json");
    fs::write(&spec, "{\n  \"variable\": \"n\",\n  \"values\": [1000],\n  \"trails\": 3\n}").unwrap();
    let o = uavscf(&["sweep", "--spec", spec.to_str().unwrap()], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("trails") && err.contains("line 4"), "{err}");
}

#[test]
fn simulate_writes_tables_with_maneuver_column() {
    let tmp = TempDir::new().unwrap();
    let cfg = small_config(tmp.path());
    let out = tmp.path().join("s");
    let o = uavscf(&["simulate", "--config", &cfg, "--trials", "2", "--mobility-J", "0.5", "--seed", "9"], &out);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let records = fs::read_to_string(out.join("records.csv")).unwrap();
    assert!(records.lines().next().unwrap().split(',').any(|h| h == "k_maneuver"));
    let trials = fs::read_to_string(out.join("trials.csv")).unwrap();
    assert_eq!(trials.lines().count(), 3);
    let sidecar: serde_json::Value = serde_json::from_slice(&fs::read(out.join("simulate.json")).unwrap()).unwrap();
    assert_eq!(sidecar["seed"], 9);
    assert_eq!(sidecar["config"]["mobility_j_m"], 0.5);
    assert!(sidecar["git_describe"].is_string());
}

#[test]
fn single_point_sweep_has_one_row_and_no_fit() {
    let tmp = TempDir::new().unwrap();
    let cfg = small_config(tmp.path());
    let spec = tmp.path().join("spec.json");
    fs::write(&spec, r#"{"variable": "n", "values": [2000], "metrics": ["mean_wait"]}"#).unwrap();
    let out = tmp.path().join("w");
    let o = uavscf(&["sweep", "--config", &cfg, "--spec", spec.to_str().unwrap()], &out);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(out.join("sweep.csv")).unwrap().lines().count(), 2);
    let side: serde_json::Value = serde_json::from_slice(&fs::read(out.join("sweep.json")).unwrap()).unwrap();
    assert_eq!(side["details"]["fits"].as_array().unwrap().len(), 0);
}

#[test]
fn sweep_with_every_point_infeasible_fails() {
    let tmp = TempDir::new().unwrap();
    let cfg = small_config(tmp.path());
    let spec = tmp.path().join("spec.json");
    fs::write(&spec, r#"{"variable": "t0", "values": [0.5, 1.0]}"#).unwrap();
    let o = uavscf(&["sweep", "--config", &cfg, "--spec", spec.to_str().unwrap()], tmp.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn heatmap_matrix_has_stated_resolution() {
    let tmp = TempDir::new().unwrap();
    let spec = tmp.path().join("heat.json");
    fs::write(&spec, r#"{"radius": 0.8, "resolution": 7}"#).unwrap();
    let out = tmp.path().join("h");
    let o = uavscf(&["heatmap", "--n", "2000", "--spec", spec.to_str().unwrap()], &out);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let matrix = fs::read_to_string(out.join("heatmap_matrix.csv")).unwrap();
    assert_eq!(matrix.lines().count(), 7 * 7);
    assert!(matrix.lines().all(|l| l.split(',').count() == 7));
    assert_eq!(fs::read_to_string(out.join("heatmap.csv")).unwrap().lines().count(), 7 * 7 * 7 + 1);
}

#[test]
fn help_lists_flags_with_units() {
    for sub in ["analytic", "simulate", "sweep", "heatmap", "delay-curve"] {
        let o = Command::new(env!("CARGO_BIN_EXE_uavscf")).args([sub, "--help"]).output().unwrap();
        let text = String::from_utf8_lossy(&o.stdout);
        for flag in ["--config", "--dim", "--n", "--seed", "--trials", "--mobility-J", "--out"] {
            assert!(text.contains(flag), "{sub} --help lacks {flag}");
        }
        assert!(text.contains("meters"));
    }
}

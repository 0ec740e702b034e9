use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tumor_sim::output::{parse_radius_csv, parse_snapshot_csv, snapshot_file_name};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tumor-sim"))
}

fn reference_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/reference.json")
}

fn short_config(dir: &Path, t_final: f64, snapshots: usize) -> PathBuf {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(reference_path()).unwrap()).unwrap();
    v["scheme"]["T_final"] = t_final.into();
    v["output"]["snapshots"] = snapshots.into();
    v["output"]["directory"] = dir.join("out").to_string_lossy().into_owned().into();
    let path = dir.join("cfg.json");
    std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    path
}

/// Checks that every element opened is closed in order.
fn balanced(svg: &str) -> bool {
    let mut stack: Vec<String> = Vec::new();
    let mut rest = svg;
    while let Some(start) = rest.find('<') {
        let end = match rest[start..].find('>') {
            Some(e) => start + e,
            None => return false,
        };
        let tag = &rest[start + 1..end];
        rest = &rest[end + 1..];
        if tag.starts_with('?') || tag.starts_with('!') || tag.ends_with('/') {
            continue;
        }
        let name = |t: &str| t.split_whitespace().next().unwrap_or("").to_string();
        if let Some(closing) = tag.strip_prefix('/') {
            if stack.pop().as_deref() != Some(closing.trim()) {
                return false;
            }
        } else {
            stack.push(name(tag));
        }
    }
    stack.is_empty()
}

#[test]
fn missing_config_exits_with_two() {
    let out = bin().args(["run", "definitely_missing.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("definitely_missing.json"));
}

#[test]
fn invalid_config_names_key() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(reference_path()).unwrap()).unwrap();
    v["model"]["mu"] = (-1.0).into();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let out = bin().arg("cfl").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mu"));
}

#[test]
fn cfl_subcommand_reports_reference_window() {
    let out = bin().arg("cfl").arg(reference_path()).output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ratio"].as_f64(), Some(0.02));
    assert_eq!(v["feasible"].as_bool(), Some(true));
}

#[test]
fn horizon_subcommand_reports_undefined_for_reference() {
    let out = bin().arg("horizon").arg(reference_path()).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn run_writes_readable_artefacts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = short_config(dir.path(), 0.5, 4);
    let out_dir = dir.path().join("run");
    let out = bin().arg("run").arg(&cfg).arg("--out").arg(&out_dir).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let summary: Value = serde_json::from_str(&std::fs::read_to_string(out_dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["steps"].as_u64(), Some(500));
    assert_eq!(summary["termination"]["reason"].as_str(), Some("completed"));

    let radius = parse_radius_csv(&std::fs::read_to_string(out_dir.join("radius.csv")).unwrap()).unwrap();
    assert_eq!(radius.len(), 501);
    assert_eq!(radius[0], (0.0, 1.0));

    let last = parse_snapshot_csv(&std::fs::read_to_string(out_dir.join(snapshot_file_name(500))).unwrap()).unwrap();
    assert_eq!(last.x.len(), 201);
    assert_eq!(*last.c.last().unwrap(), 1.0);
    for field in ["alpha", "u", "c", "radius"] {
        let svg = std::fs::read_to_string(out_dir.join(format!("{field}.svg"))).unwrap();
        assert!(balanced(&svg), "{field}.svg is not well formed");
    }
}

#[test]
fn single_snapshot_plot_has_one_polyline() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = short_config(dir.path(), 0.0, 1);
    let out_dir = dir.path().join("run");
    let out = bin().arg("run").arg(&cfg).arg("--out").arg(&out_dir).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = std::fs::read_to_string(out_dir.join("alpha.svg")).unwrap();
    assert!(balanced(&svg));
    assert!(svg.starts_with("<?xml") || svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polyline").count(), 1);
}

#[test]
fn sweep_writes_table() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(reference_path()).unwrap()).unwrap();
    v["scheme"]["a_star_lo"] = 0.05.into();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, v.to_string()).unwrap();
    let out = bin()
        .arg("sweep")
        .arg(&cfg)
        .args(["--grid", "a_hi=0.81:0.99:5;a_lo=0.01:0.09:3;m02=0.8"])
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = std::fs::read_to_string(dir.path().join("horizon_sweep.csv")).unwrap();
    assert_eq!(table.lines().count(), 1 + 15);
}

#[test]
fn malformed_grid_is_rejected() {
    let out = bin().arg("sweep").arg(reference_path()).args(["--grid", "a_hi=oops"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

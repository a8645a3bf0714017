//! End-to-end checks of the command-line driver: exit codes, CSV/JSON
//! shape, and config validation.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_horoxform"))
}

fn write_config(dir: &std::path::Path, body: &str) -> std::path::PathBuf {
    let path = dir.join("config.json");
    std::fs::write(&path, body).unwrap();
    path
}

const POWER_N3: &str = r#"{
    "schema_version": 1,
    "n": 3,
    "field": { "kind": "power", "beta": 3.0 },
    "t_values": [-1.0, 0.0, 1.0]
}"#;

#[test]
fn forward_power_csv() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), POWER_N3);
    let out = bin()
        .args(["forward", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,computed,reference,rel_err");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    // t = 0 row matches pi to many digits
    let row: Vec<&str> = rows[1].split(',').collect();
    let computed: f64 = row[1].parse().unwrap();
    assert!((computed - std::f64::consts::PI).abs() < 1e-8);
    let rel: f64 = row[3].parse().unwrap();
    assert!(rel < 1e-6);
}

#[test]
fn missing_config_exits_one() {
    let out = bin()
        .args(["forward", "--config", "/nonexistent/config.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn invalid_config_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), r#"{ "schema_version": 99, "n": 3, "field": { "kind": "power", "beta": 3.0 } }"#);
    let out = bin()
        .args(["forward", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // divergent field: numeric preconditions map to exit 1 as invalid
    // input for the requested run
    let config = write_config(
        dir.path(),
        r#"{ "schema_version": 1, "n": 3, "field": { "kind": "power", "beta": 0.5 } }"#,
    );
    let out = bin()
        .args(["forward", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_geometry_passes_and_is_csv_clean() {
    let out = bin()
        .args(["verify", "--suite", "geometry", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("id,computed,reference,abs_err,rel_err,tol,status,wall_time_ms"));
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_unknown_suite_exits_one() {
    let out = bin().args(["verify", "--suite", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_json_report_shape() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = bin()
        .args(["verify", "--suite", "fractional", "--format", "json", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(parsed["schema_version"], 1);
    assert_eq!(parsed["suite"], "fractional");
    assert!(parsed["results"].as_array().unwrap().len() > 5);
}

#[test]
fn invert_mean_roundtrip_through_cli() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{
            "schema_version": 1,
            "n": 3,
            "field": { "kind": "exp_bump", "rate": 3.0 },
            "x_values": [1.5]
        }"#,
    );
    let out_path = dir.path().join("result.csv");
    let out = bin()
        .args(["invert-mean", "--config"])
        .arg(&config)
        .args(["--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let rel: f64 = row[3].parse().unwrap();
    assert!(rel <= 1e-2, "reconstruction error {rel}");
}

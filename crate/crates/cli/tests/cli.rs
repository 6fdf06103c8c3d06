use std::process::{Command, Output};

use serde_json::Value;

fn capfloat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capfloat")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn data_rows(out: &Output) -> Vec<Vec<String>> {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    text.lines().filter(|l| !l.starts_with('#')).skip(1).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

fn metadata(out: &Output, key: &str) -> Option<String> {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let prefix = format!("# {key}: ");
    text.lines().find_map(|l| l.strip_prefix(&prefix).map(str::to_owned))
}

#[test]
fn two_configurations_at_right_angle() {
    let out = capfloat(&["equilibria", "--gamma", "1.5707963", "--A", "3.8", "--C", "2"]);
    assert_eq!(code(&out), 0);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 2);
    let first: f64 = rows[0][0].parse().unwrap();
    let second: f64 = rows[1][0].parse().unwrap();
    assert!((first - 2.3915).abs() < 5e-4, "{first}");
    assert!((second - 3.0178).abs() < 5e-4, "{second}");
    assert_eq!(rows[0][2], "stable");
    assert_eq!(rows[1][2], "unstable");
}

#[test]
fn heavy_hydrophilic_cylinder_sinks() {
    let out = capfloat(&["equilibria", "--gamma", "0", "--A", "4", "--C", "1"]);
    assert_eq!(code(&out), 3);
    assert!(data_rows(&out).is_empty());
}

#[test]
fn physical_input_echoes_derived_ratios() {
    let out = capfloat(&[
        "equilibria", "--m", "1.2", "--rho", "1", "--sigma", "72", "--g", "980", "--a", "0.5641896", "--gamma", "1.5707963",
    ]);
    assert_eq!(code(&out), 0);
    let a: f64 = metadata(&out, "A (derived)").unwrap().parse().unwrap();
    let c: f64 = metadata(&out, "C (derived)").unwrap().parse().unwrap();
    assert!((a - 1.2 / 0.5641896f64.powi(2)).abs() < 1e-12);
    assert!((c - 0.5641896 * (980.0f64 / 72.0).sqrt()).abs() < 1e-12);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][2], "stable");
    assert_ne!(rows[1][2], "stable");
}

#[test]
fn astar_reports_numeric_and_series_rows() {
    let out = capfloat(&["astar", "--gamma", "1.5707963", "--C", "1"]);
    assert_eq!(code(&out), 0);
    let rows = data_rows(&out);
    let methods: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(methods, ["numeric", "small_c_series", "large_c_series"]);
    let a_star: f64 = rows[0][1].parse().unwrap();
    assert!(a_star > std::f64::consts::PI && a_star.is_finite());

    let away = capfloat(&["astar", "--gamma", "2", "--C", "1"]);
    assert_eq!(code(&away), 0);
    assert_eq!(data_rows(&away).len(), 1);
}

#[test]
fn degrees_convert_on_input() {
    let rad = capfloat(&["equilibria", "--gamma", "1.2", "--A", "3.8", "--C", "2"]);
    let deg = capfloat(&["equilibria", "--gamma", &1.2f64.to_degrees().to_string(), "--degrees", "--A", "3.8", "--C", "2"]);
    let (r, d) = (data_rows(&rad), data_rows(&deg));
    assert_eq!(r.len(), d.len());
    for (x, y) in r.iter().zip(&d) {
        let (x, y): (f64, f64) = (x[0].parse().unwrap(), y[0].parse().unwrap());
        assert!((x - y).abs() < 1e-10);
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cases: [&[&str]; 4] = [
        &["curves", "--gamma", "1.5707963", "--A", "4", "--C", "1"],
        &["region-map", "--gamma", "2.3", "--resolution", "25", "--format", "json"],
        &["profile", "--gamma", "2", "--A", "3.8", "--C", "2"],
        &["equilibria", "--gamma", "2.5", "--A", "5", "--C", "0.7", "--format", "json"],
    ];
    for args in cases {
        let first = capfloat(args);
        let second = capfloat(args);
        assert_eq!(code(&first), code(&second));
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn json_carries_schema_version() {
    let out = capfloat(&["equilibria", "--gamma", "1.5707963", "--A", "3.8", "--C", "2", "--format", "json"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], Value::from(1));
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
    assert_eq!(doc["rows"][0]["stability"], Value::from("stable"));
}

#[test]
fn region_map_json_includes_curves() {
    let out = capfloat(&["region-map", "--gamma", "2.3", "--resolution", "10", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 100);
    let kinds: Vec<&str> = doc["curves"].as_array().unwrap().iter().map(|c| c["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["C1", "C2", "C3"]);
}

#[test]
fn csv_headers_name_units_and_use_lf() {
    let out = capfloat(&["curves", "--gamma", "1", "--A", "2", "--C", "1", "--resolution", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "phi0 [rad],force [sigma],energy [sigma*a],height [a]");
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 4);
}

#[test]
fn timestamp_is_opt_in() {
    let args = ["astar", "--gamma", "2", "--C", "1"];
    assert!(metadata(&capfloat(&args), "generated").is_none());
    let stamped = capfloat(&[&args[..], &["--timestamp"]].concat());
    assert!(metadata(&stamped, "generated").is_some());
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eq.csv");
    let out = capfloat(&["equilibria", "--gamma", "1.5707963", "--A", "3.8", "--C", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("stable"));
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 5] = [
        &["equilibria", "--A", "3", "--C", "1"],
        &["equilibria", "--gamma", "1", "--A", "3"],
        &["equilibria", "--gamma", "1", "--A", "3", "--C", "1", "--m", "1"],
        &["equilibria", "--gamma", "1", "--m", "1", "--rho", "1"],
        &["curves", "--gamma", "1", "--A", "x", "--C", "1"],
    ];
    for args in cases {
        assert_eq!(code(&capfloat(args)), 2, "{args:?}");
    }
}

#[test]
fn domain_errors_exit_four_with_library_message() {
    let out = capfloat(&["astar", "--gamma", "0.3", "--C", "0.1"]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no second critical point"));

    assert_eq!(code(&capfloat(&["equilibria", "--gamma", "4", "--A", "3", "--C", "1"])), 4);
    assert_eq!(code(&capfloat(&["equilibria", "--gamma", "1", "--A", "-1", "--C", "1"])), 4);
    assert_eq!(code(&capfloat(&["region-map", "--gamma", "1", "--A-min", "5", "--A-max", "2"])), 4);
}

#[test]
fn exploratory_allows_negative_mass() {
    let out = capfloat(&["equilibria", "--gamma", "0", "--A", "-0.05", "--C", "0.5", "--exploratory"]);
    assert_eq!(code(&out), 0);
    assert_eq!(data_rows(&out).len(), 2);
}

#[test]
fn scientific_notation_is_accepted() {
    let out = capfloat(&["equilibria", "--gamma", "1.5707963e0", "--A", "3.8E0", "--C", "2e0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(data_rows(&out).len(), 2);
}

#[test]
fn verify_passes() {
    let out = capfloat(&["verify", "--sets", "40", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["rows"].as_array().unwrap().iter().all(|r| r["passed"] == Value::Bool(true)));
}

use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn spintun(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spintun")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn parse(text: &str) -> Self {
        let mut r = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let header = r.headers().unwrap().iter().map(String::from).collect();
        let rows = r
            .records()
            .map(|rec| rec.unwrap().iter().map(String::from).collect())
            .collect();
        Self { header, rows }
    }

    fn col(&self, name: &str) -> usize {
        self.header.iter().position(|h| h == name).unwrap()
    }

    fn num(&self, row: usize, name: &str) -> Option<f64> {
        let cell = &self.rows[row][self.col(name)];
        (!cell.is_empty()).then(|| cell.parse().unwrap())
    }
}

fn summary(text: &str, key: &str) -> f64 {
    let prefix = format!("# summary.{key}=");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no summary key {key}"))
        .parse()
        .unwrap()
}

fn write_params(dir: &Path, body: &str) -> String {
    let path = dir.join("params.json");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn bad_key_exits_2_and_names_it() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"D_K": 0.275, "E_K": 0.046, "two_S": 20, "gee": 2.0}"#, "gee"),
        (r#"{"D_K": 0.275, "E_K": 0.046, "two_S": 20}"#, "g"),
        (r#"{"D_K": 0.275, "E_K": 0.046, "two_S": 20.5, "g": 2.0}"#, "two_S"),
        (r#"{"D_K": -1, "E_K": 0.046, "two_S": 20, "g": 2.0}"#, "D_K"),
        (
            r#"{"D_K": 0.275, "E_K": 0.046, "two_S": 20, "g": 2.0, "mu_B_over_kB_K_per_T": "x"}"#,
            "mu_B_over_kB_K_per_T",
        ),
    ];
    for (body, key) in cases {
        let params = write_params(dir.path(), body);
        let out = spintun(&["spectrum", "--params", &params]);
        assert_eq!(out.status.code(), Some(2), "{body}");
        assert!(stderr(&out).contains(&format!("`{key}`")), "{body}: {}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn config_errors_exit_2() {
    let out = spintun(&["spectrum", "--params", "/nonexistent/params.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("/nonexistent/params.json"));

    assert_eq!(spintun(&["spectrum", "--n-max", "3"]).status.code(), Some(2));
    assert_eq!(spintun(&["spectrum", "--n-max", "513"]).status.code(), Some(2));
    let below = spintun(&["splittings", "--n-max", "10"]);
    assert_eq!(below.status.code(), Some(2));
    assert!(stderr(&below).contains("--n-max"));
    assert_eq!(
        spintun(&["field-scan", "--fields", "0.1:0:0.01"]).status.code(),
        Some(2)
    );
}

#[test]
fn field_beyond_saturation_is_rejected() {
    let out = spintun(&["field-scan", "--fields", "0:5:1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("4.3218"), "{}", stderr(&out));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["spectrum", "--no-timestamp"][..],
        &["splittings", "--no-timestamp", "--format", "json"],
        &["figure-data", "--no-timestamp", "--points", "16"],
    ] {
        assert_eq!(stdout(&spintun(args)), stdout(&spintun(args)));
    }
    assert!(stdout(&spintun(&["figure-data", "--points", "2"])).contains("# timestamp_unix="));
    assert!(!stdout(&spintun(&["figure-data", "--points", "2", "--no-timestamp"])).contains("timestamp_unix"));
}

#[test]
fn zero_field_is_the_default() {
    assert_eq!(
        stdout(&spintun(&["spectrum", "--no-timestamp"]))
            .lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>(),
        stdout(&spintun(&["spectrum", "--no-timestamp", "--fields", "0"]))
            .lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>()
    );
}

#[test]
fn spectrum_ground_row() {
    let t = Csv::parse(&stdout(&spintun(&["spectrum", "--no-timestamp"])));
    assert_eq!(t.rows.len(), 21);
    assert!((t.num(0, "angle_K").unwrap() + 27.6447).abs() < 0.002);
    let dev = t.num(0, "deviation_percent").unwrap();
    assert!(dev > 0.2 && dev < 0.6, "{dev}");
}

#[test]
fn csv_and_json_agree_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("out.json");
    let csv = Csv::parse(&stdout(&spintun(&["splittings", "--no-timestamp"])));
    let out = spintun(&[
        "splittings",
        "--no-timestamp",
        "--format",
        "json",
        "--out",
        json_path.to_str().unwrap(),
    ]);
    assert!(stdout(&out).is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();

    let columns: Vec<&str> = doc["columns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(columns, csv.header);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), csv.rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().unwrap();
        assert_eq!(row.len(), csv.header.len());
        for (j, cell) in row.iter().enumerate() {
            let text = &csv.rows[i][j];
            match cell {
                Value::Null => assert!(text.is_empty()),
                Value::Number(n) => assert_eq!(n.as_f64().unwrap().to_bits(), text.parse::<f64>().unwrap().to_bits()),
                other => panic!("unexpected cell {other}"),
            }
        }
    }
    assert_eq!(doc["metadata"]["params"]["two_S"], 20);
    assert_eq!(doc["summary"]["energy_policy"], "reference");
}

#[test]
fn splittings_at_requested_energies() {
    let t = Csv::parse(&stdout(&spintun(&["splittings", "--energies", "-5.34,-7.5"])));
    assert_eq!(t.rows.len(), 2);
    assert!((t.num(0, "khw_mg_K").unwrap() - 0.65).abs() < 0.02);
    assert!((t.num(0, "reference_splitting_K").unwrap() - 0.72).abs() < 0.02);
    assert!((t.num(1, "parabolic_K").unwrap() - 0.14).abs() < 0.01);
    assert!((t.num(1, "reference_splitting_K").unwrap() - 0.13).abs() < 0.01);
}

#[test]
fn single_point_scan_matches_zero_field_splitting() {
    let scan_text = stdout(&spintun(&["field-scan", "--fields", "0:0:1"]));
    let scan = Csv::parse(&scan_text);
    let split = Csv::parse(&stdout(&spintun(&["splittings"])));
    assert_eq!(scan.rows.len(), 1);
    assert_eq!(scan.num(0, "reference_gap_K"), split.num(0, "reference_splitting_K"));
    assert!(scan_text.contains("# summary.reference_slope_K_per_T=\n"));
}

#[test]
fn field_scan_summary() {
    let text = stdout(&spintun(&["field-scan"]));
    assert_eq!(Csv::parse(&text).rows.len(), 11);
    assert!((summary(&text, "reference_slope_K_per_T") - 26.85).abs() < 0.1);
    assert!((summary(&text, "analytic_gap_coefficient_K_per_T") - 26.79).abs() < 0.01);
    assert!((summary(&text, "matching_field_harmonic_T") - 0.2239).abs() < 5e-4);
    assert!((summary(&text, "matching_field_mass_route_T") - 0.216).abs() < 1e-3);
    assert!((summary(&text, "saturation_field_T") - 4.32).abs() < 5e-3);
    assert!(summary(&text, "chi_per_T2") > 0.0);
}

#[test]
fn figure_data_grid_and_shape() {
    let n = 360;
    let t = Csv::parse(&stdout(&spintun(&["figure-data", "--points", "360"])));
    assert_eq!(t.rows.len(), 3 * n);
    assert_eq!(t.num(0, "phi_rad"), Some(0.0));
    assert_eq!(t.num(n - 1, "phi_rad"), Some(2.0 * PI * (n - 1) as f64 / n as f64));

    let argmin = |name: &str, range: std::ops::Range<usize>| {
        range
            .clone()
            .min_by(|&a, &b| t.num(a, name).unwrap().total_cmp(&t.num(b, name).unwrap()))
            .unwrap()
    };
    for name in ["potential_K", "mass_per_K"] {
        let v0 = t.num(0, name).unwrap();
        assert_eq!(t.num(argmin(name, 0..n), name), Some(v0));
        assert!((t.num(n / 2, name).unwrap() - v0).abs() < 1e-12);
        for i in 1..n {
            let (a, b) = (t.num(i, name).unwrap(), t.num(n - i, name).unwrap());
            assert!((a - b).abs() < 1e-12, "{name} not even at row {i}");
        }
    }

    let near = 2 * n..3 * n;
    let peak = near
        .clone()
        .max_by(|&a, &b| {
            t.num(a, "mass_per_K")
                .unwrap()
                .total_cmp(&t.num(b, "mass_per_K").unwrap())
        })
        .unwrap();
    let phi = t.num(peak, "phi_rad").unwrap();
    let phi = phi.min(2.0 * PI - phi);
    assert!((phi - 2.26).abs() < 0.1, "mass peak at {phi}");
}

#[test]
fn mass_sentinel_beyond_saturation() {
    let text = stdout(&spintun(&["figure-data", "--fields", "5", "--points", "72"]));
    let t = Csv::parse(&text);
    assert!((0..t.rows.len()).any(|i| t.num(i, "mass_per_K").is_none()));
    assert!((0..t.rows.len()).all(|i| t.num(i, "potential_K").is_some()));
    let js = stdout(&spintun(&[
        "figure-data",
        "--fields",
        "5",
        "--points",
        "72",
        "--format",
        "json",
    ]));
    let doc: Value = serde_json::from_str(&js).unwrap();
    assert!(doc["rows"].as_array().unwrap().iter().any(|r| r[3].is_null()));
}

#[test]
fn check_exit_status_tracks_failures() {
    let out = spintun(&["check", "--no-timestamp"]);
    let t = Csv::parse(&String::from_utf8(out.stdout.clone()).unwrap());
    let status = t.col("status");
    let failed = t.rows.iter().filter(|r| r[status] == "FAIL").count();
    assert!(t.rows.len() >= 30);
    assert!(t.rows.iter().all(|r| r[status] == "PASS" || r[status] == "FAIL"));
    assert_eq!(out.status.code(), Some(if failed == 0 { 0 } else { 1 }));
}

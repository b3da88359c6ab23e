use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

use oamlab::runner::RunConfig;

fn oamlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oamlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn small_config() -> RunConfig {
    let mut c = RunConfig::default();
    c.grid.n = 256;
    c.aperture.lambda = oamlab::runner::LambdaSweep::List(vec![0.005, 0.5, 20.0]);
    c.l0 = vec![1, 3];
    c.figures.fig1_lambdas = vec![2.0];
    c
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn read_table(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut reader = csv::Reader::from_path(path).unwrap();
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn prints_a_valid_default_config() {
    let out = oamlab(&["--print-default-config"]);
    assert_eq!(code(&out), 0);
    let config = RunConfig::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(config, RunConfig::default());
}

#[test]
fn prints_the_schema() {
    let out = oamlab(&["--print-config-schema"]);
    assert_eq!(code(&out), 0);
    let schema: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(schema.get("properties").is_some());
}

#[test]
fn simulate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "c.json", &small_config().to_json());
    let mut outputs = Vec::new();
    for (run, workers) in [("a", "1"), ("b", "3")] {
        let out_dir = dir.path().join(run);
        let out = oamlab(&["--workers", workers, "simulate", "--config", &config, "--out", out_dir.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        outputs.push((
            std::fs::read(out_dir.join("results.csv")).unwrap(),
            std::fs::read(out_dir.join("results.json")).unwrap(),
        ));
    }
    assert_eq!(outputs[0], outputs[1]);
    let (header, rows) = read_table(&dir.path().join("a/results.csv"));
    assert_eq!(
        header,
        [
            "l0",
            "lambda",
            "delta_phi",
            "b_numeric",
            "b_analytic",
            "b_gaussian",
            "concurrence_numeric",
            "concurrence_universal"
        ]
    );
    assert_eq!(rows.len(), 6);
    for w in rows.windows(2) {
        assert!((w[0][0], w[0][1]) < (w[1][0], w[1][1]));
    }
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out_dir = out_dir.to_str().unwrap();

    let mut bad = small_config();
    bad.aperture.lambda = oamlab::runner::LambdaSweep::List(vec![1.0, 5e4]);
    let path = write_config(dir.path(), "range.json", &bad.to_json());
    assert_eq!(code(&oamlab(&["simulate", "--config", &path, "--out", out_dir])), 2);

    let path = write_config(dir.path(), "broken.json", "{\"grid\": ");
    assert_eq!(code(&oamlab(&["simulate", "--config", &path, "--out", out_dir])), 2);

    let path = write_config(dir.path(), "unknown.json", &small_config().to_json().replacen('{', "{\"colour\": 1,", 1));
    assert_eq!(code(&oamlab(&["simulate", "--config", &path, "--out", out_dir])), 2);

    let path = write_config(dir.path(), "ok.json", &small_config().to_json());
    assert_eq!(code(&oamlab(&["simulate", "--config", &path])), 2);
    assert_eq!(code(&oamlab(&["--workers", "0", "simulate", "--config", &path, "--out", out_dir])), 2);
    assert!(!Path::new(out_dir).join("results.csv").exists());
}

#[test]
fn output_dir_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = small_config();
    config.output_dir = Some(dir.path().join("from_config"));
    let path = write_config(dir.path(), "c.json", &config.to_json());
    assert_eq!(code(&oamlab(&["simulate", "--config", &path])), 0);
    assert!(dir.path().join("from_config/results.csv").exists());
}

#[test]
fn default_config_gives_120_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), "c.json", &RunConfig::default().to_json());
    let out = oamlab(&["simulate", "--config", &path, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let (_, rows) = read_table(&dir.path().join("results.csv"));
    assert_eq!(rows.len(), 120);
    let json: Vec<serde_json::Value> =
        serde_json::from_slice(&std::fs::read(dir.path().join("results.json")).unwrap()).unwrap();
    assert_eq!(json.len(), 120);
}

#[test]
fn figures_are_consistent() {
    let dir = tempfile::tempdir().unwrap();
    // The spectrum mass bound needs the default sampling.
    let mut config = small_config();
    config.grid.n = 512;
    let path = write_config(dir.path(), "c.json", &config.to_json());
    let out_dir = dir.path().to_str().unwrap();
    assert_eq!(code(&oamlab(&["simulate", "--config", &path, "--out", out_dir])), 0);
    let out = oamlab(&["figures", "--config", &path, "--out", out_dir]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["fig1.csv", "fig2.csv", "fig2_inset.svg", "fig3.svg", "fig4_overlap.svg", "fig4_concurrence.svg"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }

    let (_, fig1) = read_table(&dir.path().join("fig1.csv"));
    let mut mass: BTreeMap<u64, f64> = BTreeMap::new();
    for row in &fig1 {
        *mass.entry(row[0].to_bits()).or_default() += row[2];
    }
    for total in mass.values() {
        assert!((total - 1.0).abs() < 1e-4, "fig1 mass {total}");
    }

    let (_, fig4) = read_table(&dir.path().join("fig4.csv"));
    for row in &fig4 {
        assert!((row[5] - (2.0 * row[1] * row[1]).tanh()).abs() < 1e-12);
        assert!((row[4] - (-2.0 * row[1] * row[1]).exp()).abs() < 1e-12);
    }

    let (_, fig2) = read_table(&dir.path().join("fig2.csv"));
    let open: Vec<_> = fig2.iter().filter(|r| r[1] == 0.005).collect();
    assert!(!open.is_empty());
    for row in open {
        assert!(row[3].abs() < 0.02, "b at lambda 0.005: {}", row[3]);
    }
}

#[test]
fn figures_with_missing_results_file_fail() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), "c.json", &small_config().to_json());
    let missing = dir.path().join("nope.csv");
    let out = oamlab(&[
        "figures",
        "--config",
        &path,
        "--out",
        dir.path().to_str().unwrap(),
        "--results",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn fast_validation_reports_consistently() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = oamlab(&["validate", "--fast", "--report", report.to_str().unwrap()]);
    let stdout = String::from_utf8(out.stdout.clone()).unwrap();
    let overall = stdout.lines().last().unwrap();
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    let pass = json["pass"].as_bool().unwrap();
    assert_eq!(overall, if pass { "overall: PASS" } else { "overall: FAIL" });
    assert_eq!(code(&out), if pass { 0 } else { 1 });
    assert_eq!(stdout.lines().filter(|l| l.starts_with("criterion ")).count(), 8);
    assert!(stdout.contains("criterion 6 SKIP") && stdout.contains("criterion 8 SKIP"));
}

use std::path::PathBuf;
use std::process::{Command, Output};

use sgg::ggsum::SumParams;
use sgg::oracle::conv_pdf;
use sgg_cli::table::OutputTable;

fn sgg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgg")).args(args).output().expect("binary runs")
}

fn table(args: &[&str]) -> OutputTable {
    let out = sgg(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    OutputTable::from_csv(&String::from_utf8(out.stdout).unwrap()).unwrap()
}

fn scalar(args: &[&str], column: &str) -> f64 {
    table(args).column(column).unwrap()[0]
}

fn scratch_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sgg-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn help_for_every_subcommand() {
    assert!(sgg(&["--help"]).status.success());
    for sub in ["ggd", "sum", "approx", "table1", "figure", "validate"] {
        let out = sgg(&[sub, "--help"]);
        assert!(out.status.success(), "{sub}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("Usage"));
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(sgg(&["ggd", "pdf", "--alpha", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(sgg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(sgg(&["ggd", "moment", "--alpha", "2"]).status.code(), Some(2));
    let both = sgg(&["sum", "pdf", "--alpha", "1", "--beta", "2", "--delta", "1", "--sigma2", "1", "--at", "1"]);
    assert_eq!(both.status.code(), Some(2));
    let neither = sgg(&["sum", "pdf", "--alpha", "1", "--beta", "2", "--at", "1"]);
    assert_eq!(neither.status.code(), Some(2));
    assert_eq!(sgg(&["approx", "tail", "--alpha", "1", "--beta", "2", "--delta", "1"]).status.code(), Some(2));
    assert_eq!(sgg(&["figure", "5"]).status.code(), Some(2));
}

#[test]
fn numerical_errors_exit_three() {
    let out = sgg(&["ggd", "mgf", "--alpha", "0.5", "--at", "0.3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("diverges"));
    assert_eq!(sgg(&["ggd", "pdf", "--alpha=-1", "--at", "0"]).status.code(), Some(3));
}

#[test]
fn ggd_examples() {
    assert_eq!(scalar(&["ggd", "kurtosis", "--alpha", "1"], "kurtosis"), 3.0);
    // 1/√(2π) = 0.39894228040…, printed to 9 significant digits
    let out = sgg(&["ggd", "pdf", "--alpha", "2", "--sigma", "1", "--mu", "0", "--at", "0"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "x,pdf\n0,0.39894228\n");
    assert_eq!(scalar(&["ggd", "moment", "--alpha", "1", "--sigma", "1", "--order", "4"], "value"), 6.0);
    let cf = table(&["ggd", "cf", "--alpha", "1.5", "--grid", "0:4:9"]);
    assert_eq!(cf.headers, vec!["t", "re", "im"]);
    assert_eq!(cf.rows.len(), 9);
}

#[test]
fn sum_examples() {
    let args = ["sum", "cdf", "--alpha", "2", "--beta", "2", "--sigma1", "1", "--delta", "1", "--at", "0"];
    assert_eq!(scalar(&args, "cdf"), 0.5);
    assert_eq!(scalar(&["sum", "kurtosis", "--alpha", "1", "--beta", "1", "--delta", "1"], "kurtosis"), 1.5);

    let t = table(&["sum", "pdf", "--alpha", "0.5", "--beta", "1.5", "--delta", "2", "--sigma1", "1", "--grid", "-6:6:121"]);
    assert_eq!(t.rows.len(), 121);
    let s = SumParams::from_delta(0.5, 1.5, 1.0, 2.0).unwrap();
    for row in t.rows.iter().step_by(8) {
        let want = conv_pdf(&s, row[0]).unwrap();
        assert!((row[1] - want).abs() < 1e-5, "z={}: {} vs {want}", row[0], row[1]);
    }

    let c = table(&["sum", "ccdf", "--alpha", "2.5", "--beta", "1.5", "--delta", "2", "--grid", "0:6:13"]);
    assert_eq!(c.headers, vec!["x", "ccdf", "log10_ccdf"]);
    let logs = c.column("log10_ccdf").unwrap();
    assert!(logs.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn explicit_sigma2_matches_delta() {
    let a = scalar(&["sum", "pdf", "--alpha", "1", "--beta", "3", "--sigma1", "2", "--delta", "4", "--at", "0.7"], "pdf");
    let b = scalar(&["sum", "pdf", "--alpha", "1", "--beta", "3", "--sigma1", "2", "--sigma2", "1", "--at", "0.7"], "pdf");
    assert_eq!(a, b);
}

#[test]
fn approx_examples() {
    let k = table(&["approx", "kurtosis", "--alpha", "0.5", "--beta", "0.5", "--delta", "1"]);
    assert!((k.column("gamma").unwrap()[0] - 0.626).abs() < 0.005);
    let t = table(&["approx", "tail", "--alpha", "2.5", "--beta", "3", "--delta", "3", "--n", "2"]);
    assert!((t.column("gamma").unwrap()[0] - 2.267).abs() < 0.05);
    assert_eq!(t.column("n").unwrap()[0], 2.0);
    assert!(t.column("multiple_minima").is_some());
    let curve = table(&["approx", "tail", "--alpha", "2.5", "--beta", "3", "--delta", "3", "--n", "2", "--curve"]);
    assert_eq!(curve.headers, vec!["gamma", "objective"]);
    assert_eq!(curve.rows.len(), sgg::approx::SCAN_POINTS);
}

#[test]
fn json_schema() {
    let out = sgg(&["ggd", "cdf", "--alpha", "2", "--grid", "-1:1:3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, vec!["headers", "rows"]);
    assert_eq!(v["headers"], serde_json::json!(["x", "cdf"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["rows"][1][1], serde_json::json!(0.5));
}

#[test]
fn out_flag_and_determinism() {
    let dir = scratch_dir();
    let path = dir.join("pdf.csv");
    let args = ["sum", "pdf", "--alpha", "1.5", "--beta", "2.5", "--delta", "1", "--grid", "-3:3:7"];
    let mut with_out: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    let out = sgg(&with_out);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let first = std::fs::read(&path).unwrap();
    assert_eq!(first, sgg(&args).stdout);
    assert_eq!(sgg(&args).stdout, sgg(&args).stdout);
}

#[test]
fn figure_monte_carlo_is_seeded() {
    let args = ["figure", "4", "--grid", "0:6:4", "--mc-count", "20000", "--seed", "9"];
    let a = sgg(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, sgg(&args).stdout);
    let t = OutputTable::from_csv(&String::from_utf8(a.stdout).unwrap()).unwrap();
    assert_eq!(t.headers.len(), 11);
    assert!(t.headers.iter().any(|h| h == "monte_carlo_a0.5"));
}

#[test]
fn figure_one_h_curve() {
    let t = table(&["figure", "1"]);
    let i = t.column("gamma").unwrap().iter().position(|&g| g == 2.0).unwrap();
    assert_eq!(t.column("h").unwrap()[i], 3.0);
    let h = t.column("h").unwrap();
    assert!(h.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn config_defaults_and_override() {
    let dir = scratch_dir();
    let cfg = dir.join("defaults.cfg");
    std::fs::write(&cfg, "# test defaults\nalpha = 2\nformat = json\nbeta = 9\n").unwrap();
    let c = cfg.to_str().unwrap();
    // alpha from the file; beta is not a ggd flag and is ignored
    let out = sgg(&["ggd", "kurtosis", "--config", c]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rows"][0][0].as_f64().unwrap().abs() < 1e-12, true);
    // explicit flags win
    let out = sgg(&["ggd", "kurtosis", "--alpha", "1", "--format", "csv", "--config", c]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "kurtosis\n3\n");
    assert_eq!(sgg(&["ggd", "kurtosis", "--config", "/nonexistent/sgg.cfg"]).status.code(), Some(4));
}

#[test]
fn validate_exit_status() {
    let ok = sgg(&["validate", "specfun"]);
    assert!(ok.status.success());
    let text = String::from_utf8(ok.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 4);
    let bad = sgg(&["validate", "specfun", "--tolerance", "0"]);
    assert_eq!(bad.status.code(), Some(1));
    let text = String::from_utf8(bad.stdout).unwrap();
    assert!(text.contains("FAIL specfun fox_h exponential reduction"));
}

use std::process::{Command, Output};

use serde_json::Value;

fn ellbeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellbeta")).args(args).output().expect("binary runs")
}

fn json(out: &[u8]) -> Value {
    serde_json::from_slice(out).expect("valid JSON")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn beta_quarter_and_half() {
    let o = ellbeta(&["beta", "--a", "2", "--b", "1", "--rho", "0.25"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o.stdout);
    assert!((v["beta"].as_f64().unwrap() - 5f64.sqrt()).abs() < 1e-12);
    for key in ["rho", "lambda", "beta", "lazutkin", "caustic_perimeter", "phi", "k", "f", "J"] {
        assert!(v[key].is_f64(), "missing {key}");
    }
    let v = json(&ellbeta(&["beta", "--a", "2", "--b", "1", "--rho", "0.5"]).stdout);
    assert_eq!(v["beta"].as_f64(), Some(4.0));
}

#[test]
fn beta_lambda_domain() {
    let o = ellbeta(&["beta", "--a", "2", "--b", "1", "--lambda", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("lambda must lie in (0, b^2)"));
    assert_eq!(err.trim_end().lines().count(), 1);
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ellbeta(&["beta", "--a", "2", "--b", "1"]).status.code(), Some(2));
    assert_eq!(ellbeta(&["beta", "--a", "1", "--b", "2", "--rho", "0.2"]).status.code(), Some(2));
    let both = ["beta", "--a", "2", "--b", "1", "--rho", "0.2", "--lambda", "0.5"];
    assert_eq!(ellbeta(&both).status.code(), Some(2));
}

#[test]
fn numbers_round_trip() {
    let o = ellbeta(&["beta", "--a", "2", "--b", "1", "--rho", "0.3"]);
    let text = stdout(&o);
    let v = json(&o.stdout);
    let beta = v["beta"].as_f64().unwrap();
    let printed = text.split("\"beta\":").nth(1).unwrap().split(',').next().unwrap();
    assert_eq!(printed.parse::<f64>().unwrap(), beta);
    // 17 significant digits
    assert_eq!(printed.split('e').next().unwrap().replace('.', "").len(), 17);
}

fn table(args: &[&str]) -> Vec<Vec<f64>> {
    let mut full = vec!["table", "--a", "2", "--b", "1"];
    full.extend_from_slice(args);
    let o = ellbeta(&full);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("rho,lambda,beta,lazutkin,U,caustic_perimeter"));
    lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect()
}

#[test]
fn table_rows() {
    let rows = table(&["--rho-min", "0.1", "--rho-max", "0.4", "--steps", "3"]);
    assert_eq!(rows.len(), 3);
    assert!(rows[0][2] < rows[1][2] && rows[1][2] < rows[2][2]);
    assert_eq!(table(&["--rho-min", "0.2", "--rho-max", "0.3", "--steps", "1"]).len(), 1);
    let rows = table(&["--rho-min", "0.3", "--rho-max", "0.5", "--steps", "4"]);
    let last = rows.last().unwrap();
    assert_eq!((last[0], last[2]), (0.5, 4.0));
    assert!(last[4].is_infinite());
}

#[test]
fn table_is_deterministic() {
    let args = ["table", "--a", "3", "--b", "1.7", "--rho-min", "0.05", "--rho-max", "0.45", "--steps", "25"];
    assert_eq!(ellbeta(&args).stdout, ellbeta(&args).stdout);
}

#[test]
fn simulate_square_orbit() {
    let o = ellbeta(&["simulate", "--a", "2", "--b", "1", "--rho", "0.25", "--steps", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o.stdout);
    assert_eq!(v["closure"]["n"].as_i64(), Some(4));
    assert_eq!(v["closure"]["m"].as_i64(), Some(1));
    assert!((v["empirical_beta"].as_f64().unwrap() - 5f64.sqrt()).abs() < 1e-12);
}

#[test]
fn simulate_irrational_does_not_close() {
    let o = ellbeta(&["simulate", "--a", "2", "--b", "1", "--rho", "0.3183098", "--steps", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o.stdout);
    assert!(v["closure"].is_null() && v["empirical_beta"].is_null());
    assert!(v["drift"]["J"].as_f64().unwrap() < 1e-9);
}

#[test]
fn simulate_zero_steps() {
    let o = ellbeta(&["simulate", "--a", "2", "--b", "1", "--rho", "0.25", "--steps", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn simulate_orbit_csv() {
    let o = ellbeta(&["simulate", "--a", "2", "--b", "1", "--lambda", "0.5", "--steps", "10", "--orbit-csv", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("step,x,y,p,phi,psi,delta,J,lambda"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 11);
    for r in &rows {
        assert!(((r[1] / 2.0).powi(2) + r[2].powi(2) - 1.0).abs() < 1e-12);
        assert!((r[8] - 0.5).abs() < 1e-12);
    }
    assert!(json(&o.stderr)["steps"].as_i64() == Some(10));

    let dir = std::env::temp_dir().join(format!("ellbeta-orbit-{}.csv", std::process::id()));
    let path = dir.to_str().unwrap();
    let o = ellbeta(&["simulate", "--a", "2", "--b", "1", "--lambda", "0.5", "--steps", "10", "--orbit-csv", path]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&dir).unwrap(), text);
    assert!(json(&o.stdout)["closure"].is_null());
    std::fs::remove_file(&dir).unwrap();
}

#[test]
fn recover_modes() {
    let s5 = 5f64.sqrt().to_string();
    let o = ellbeta(&["recover", "diameter-pair", "--beta-half", "4", "--rho2", "1/4", "--beta2", &s5]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o.stdout);
    assert!((v["a"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!((v["b"].as_f64().unwrap() - 1.0).abs() < 1e-10);

    let beta = json(&ellbeta(&["beta", "--a", "1.7", "--b", "0.9", "--rho", "0.25"]).stdout)["beta"].as_f64().unwrap();
    let len = 8.362_641_761_606_227_f64; // perimeter of (1.7, 0.9), 30-digit reference
    let o = ellbeta(&["recover", "quarter-length", "--beta-quarter", &beta.to_string(), "--circumference", &len.to_string()]);
    let v = json(&o.stdout);
    assert!((v["a"].as_f64().unwrap() - 1.7).abs() < 1e-9);
    assert!((v["b"].as_f64().unwrap() - 0.9).abs() < 1e-9);
}

#[test]
fn recover_infeasible() {
    let o = ellbeta(&["recover", "diameter-pair", "--beta-half", "4", "--rho2", "1/4", "--beta2", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8(o.stderr).unwrap().contains("attainable range"));
    let o = ellbeta(&["recover", "diameter-pair", "--beta-half", "4", "--rho2", "3/4", "--beta2", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ellbeta(&["recover", "quarter-length", "--beta-quarter", "2", "--circumference", "100"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn help_states_sign_convention() {
    let o = ellbeta(&["--help"]);
    let text = stdout(&o);
    assert!(text.contains("classical Mather beta-function is the negative"));
}

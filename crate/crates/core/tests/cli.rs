use std::process::{Command, Output};

use wagbound::bounds::{hoeffding_radius, hoeffding_radius_real, svoosh_radius, ConfidenceLevel, HypothesisClassSpec};
use wagbound::format::{parse_sweep_csv, parse_trial_csv};
use wagbound::lab::MonteCarloSummary;

fn wagbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wagbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn kv(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
        .to_string()
}

fn num(text: &str, key: &str) -> f64 {
    kv(text, key).parse().unwrap()
}

#[test]
fn bounds_figure_one_point() {
    let o = wagbound(&["bounds", "--n", "1000", "--d", "10", "--a", "5", "--delta", "0.05"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!((num(&out, "delta_star") - 0.10329).abs() < 5e-6);
    assert!((num(&out, "eps_v") - 0.189833).abs() < 1e-6);
    assert_eq!(kv(&out, "v"), "200");
    assert!(!out.contains("note="));
}

#[test]
fn bounds_single_hypothesis() {
    let o = wagbound(&["bounds", "--n", "100", "--m", "1", "--a", "2", "--delta", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let want = hoeffding_radius(100, ConfidenceLevel::new(0.5).unwrap()).unwrap();
    assert!((num(&stdout(&o), "eps_v") - want).abs() < 1e-6);
    assert_eq!(kv(&stdout(&o), "s"), "0");
}

#[test]
fn bounds_negative_critical_delta_is_flagged() {
    let o = wagbound(&["bounds", "--n", "1000", "--d", "3", "--a", "10", "--delta", "0.05"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!((num(&out, "delta_star") + 0.013486).abs() < 1e-6);
    assert_eq!(kv(&out, "note"), "WAG cannot outperform SVOOSH at this configuration");
}

#[test]
fn bounds_with_disagreement_and_binomial() {
    let o = wagbound(&[
        "bounds", "--n", "1000", "--d", "10", "--a", "5", "--delta", "0.05", "--Delta", "0.05",
    ]);
    let out = stdout(&o);
    assert!((num(&out, "eps_w_at_Delta") - 0.136541).abs() < 1e-6);
    assert_eq!(kv(&out, "wag_beats_svoosh"), "true");

    let o = wagbound(&[
        "bounds", "--n", "500", "--d", "10", "--a", "5", "--delta", "0.05", "--backend", "binomial",
        "--k", "0", "--Delta", "0.02",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    // v = 100, zero errors: 1 - 0.05^(1/100)
    assert!((num(&out, "binomial_upper") - 0.0295130).abs() < 1e-6);
    assert!((num(&out, "eps_w_at_Delta") - 0.049513).abs() < 1e-6);

    let o = wagbound(&["bounds", "--n", "500", "--d", "10", "--a", "5", "--delta", "0.05", "--backend", "binomial"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bounds_csv_file() {
    let dir = tempdir();
    let path = dir.join("report.csv");
    let o = wagbound(&[
        "bounds", "--n", "1000", "--d", "10", "--a", "5", "--delta", "0.05", "--csv", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "n,d,a,delta,eps_v,eps_w,delta_star,s,w_star,eps_for_s");
    assert!(lines.next().unwrap().starts_with("1000,10,5,0.05,0.189833,0.189833,0.103292,"));
    assert!(lines.next().is_none());
}

#[test]
fn usage_errors_exit_nonzero() {
    for args in [
        vec!["bounds", "--n", "1000", "--a", "5", "--delta", "0.05"],
        vec!["bounds", "--n", "1000", "--d", "3", "--m", "4", "--a", "5", "--delta", "0.05"],
        vec!["bounds", "--n", "1000", "--d", "3", "--a", "1", "--delta", "0.05"],
        vec!["bounds", "--n", "1000", "--d", "3", "--a", "5", "--delta", "1.5"],
        vec!["sweep", "--d", "10", "--a", "5,0.5"],
        vec!["simulate", "--method", "wag", "--n", "300", "--trials", "5"],
        vec!["simulate", "--method", "bagging", "--n", "300"],
        vec!["frobnicate"],
        vec![],
    ] {
        let o = wagbound(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(wagbound(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_rows_satisfy_identity_and_parse_back() {
    let o = wagbound(&["sweep", "--d", "3", "--a", "3,5,10", "--n-min", "1000", "--n-max", "10000", "--n-steps", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("n,d,a,delta,eps_v,eps_w,delta_star\n"));
    assert!(text.ends_with('\n'));
    let rows = parse_sweep_csv(&text).unwrap();
    assert_eq!(rows.len(), 21);
    for r in &rows {
        let delta = ConfidenceLevel::new(r.delta).unwrap();
        let radius = hoeffding_radius_real(r.n as f64 / r.a, delta);
        let eps_v = svoosh_radius(&HypothesisClassSpec::power_law(r.dimension).unwrap(), r.n, delta).unwrap();
        let rel = |got: f64, want: f64| (got - want).abs() <= 5e-6 * want.abs().max(1e-300);
        assert!(rel(r.eps_v, eps_v), "{r:?}");
        assert!(rel(r.delta_star, eps_v - radius), "{r:?}");
        assert!(rel(r.eps_w, r.delta_star + radius), "{r:?}");
    }
    let first = rows.iter().find(|r| r.n == 1000 && r.a == 10.0).unwrap();
    assert!(first.delta_star < 0.0);
}

#[test]
fn sweep_linear_and_out_file() {
    let dir = tempdir();
    let path = dir.join("sweep.csv");
    let o = wagbound(&[
        "sweep", "--d", "10", "--grid-scale", "linear", "--n-steps", "4", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let rows = parse_sweep_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let ns: Vec<u64> = rows.iter().map(|r| r.n).collect();
    assert_eq!(ns, vec![1000, 4000, 7000, 10000]);

    let o = wagbound(&["sweep", "--d", "10", "--out", "/nonexistent-dir/x.csv"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn simulate_single_trial_matches_summary() {
    let o = wagbound(&["simulate", "--method", "svoosh", "--n", "200", "--trials", "1", "--seed", "3", "--ntest", "500"]);
    assert_eq!(o.status.code(), Some(0));
    let records = parse_trial_csv(&stdout(&o)).unwrap();
    assert_eq!(records.len(), 1);
    let summary = MonteCarloSummary::from_records(&records).unwrap();
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains(&format!("failures={}", summary.failures)));
    assert!(err.contains("threshold="));
    assert_eq!(records[0].seed, 3);
}

#[test]
fn simulate_is_byte_identical() {
    let args = ["simulate", "--method", "wag", "--n", "120", "--a", "3", "--trials", "50", "--seed", "11", "--ntest", "800"];
    let a = wagbound(&args);
    let b = wagbound(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
    assert_eq!(stdout(&a).lines().count(), 51);
}

#[test]
fn simulate_reports_coverage_failure_with_exit_two() {
    // A one-point test pool: the realized test error is 0 or 1, and with 30%
    // label noise it is 1 in about 30% of trials, far above the threshold.
    let o = wagbound(&[
        "simulate", "--method", "svoosh", "--n", "50", "--trials", "200", "--k", "0", "--eta", "0.3",
        "--truth", "none", "--ntest", "1",
    ]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(o.status.code(), Some(2), "{err}");
    assert!(err.contains("coverage=failed"));
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("wagbound-cli-{}-{:?}", std::process::id(), std::thread::current().id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

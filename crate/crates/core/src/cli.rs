//! `wagbound bounds | sweep | simulate`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bounds::{
    binomial_upper_bound, bound_report, hoeffding_radius, BackendKind, ConfidenceLevel,
    HypothesisClassSpec,
};
use crate::error::{invalid, Error, Result};
use crate::format::{g6, write_sweep_csv, write_trial_csv};
use crate::lab::{
    coverage_threshold, monte_carlo, parse_truth_intervals, validation_size, GridClassSpec,
    Method, MethodConfig, SyntheticTaskSpec,
};
use crate::sweep::{parse_a_list, sweep, GridScale, SweepConfig};

/// Exit status when a simulation's failure rate exceeds the coverage
/// threshold.
pub const EXIT_COVERAGE_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "wagbound", version, about = "WAG vs SVOOSH generalization bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound ranges, critical disagreement and selection cost for one setting.
    Bounds(BoundsArgs),
    /// Δ*, ε_V and ε_W over a grid of sample sizes, as CSV.
    Sweep(SweepArgs),
    /// Monte Carlo coverage check on a synthetic interval-learning task.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: u64,
    /// Dimension: m(n) = n^d.
    #[arg(long, conflicts_with = "m", required_unless_present = "m")]
    pub d: Option<f64>,
    /// Explicit hypothesis count.
    #[arg(long)]
    pub m: Option<f64>,
    /// Split divisor; WAG validates on floor(n / a) examples.
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub delta: f64,
    /// Disagreement rate at which to also report ε_W.
    #[arg(long = "Delta")]
    pub disagreement: Option<f64>,
    /// Single-classifier radius on the validation set.
    #[arg(long, default_value = "hoeffding", value_parser = ["hoeffding", "binomial"])]
    pub backend: String,
    /// Validation errors observed on the floor(n / a) withheld examples
    /// (binomial backend).
    #[arg(long)]
    pub k: Option<u64>,
    /// Deviation at which s and w* are evaluated; defaults to ε_V.
    #[arg(long = "eps-s")]
    pub eps_s: Option<f64>,
    /// Also write the report as a one-row CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub d: f64,
    /// Comma-separated split divisors.
    #[arg(long, default_value = "5")]
    pub a: String,
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    #[arg(long = "n-min", default_value_t = 1000)]
    pub n_min: u64,
    #[arg(long = "n-max", default_value_t = 10_000)]
    pub n_max: u64,
    #[arg(long = "n-steps", default_value_t = 10)]
    pub n_steps: usize,
    #[arg(long = "grid-scale", default_value = "log", value_parser = ["log", "linear"])]
    pub grid_scale: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_parser = ["wag", "svoosh"])]
    pub method: String,
    /// Training sample size.
    #[arg(long)]
    pub n: usize,
    /// Split divisor (WAG only).
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Grid resolution G of the interval class.
    #[arg(long, default_value_t = 64)]
    pub grid: u32,
    /// Maximum number of intervals.
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    /// Label noise rate.
    #[arg(long, default_value_t = 0.1)]
    pub eta: f64,
    #[arg(long, default_value_t = 10_000)]
    pub ntest: usize,
    /// Positive regions of the target, as `lo:hi,lo:hi`.
    #[arg(long, default_value = "0.2:0.45,0.6:0.8")]
    pub truth: String,
    #[arg(long, default_value = "hoeffding", value_parser = ["hoeffding", "binomial"])]
    pub backend: String,
    /// Per-trial CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn parse_args<I, T>(args: I) -> std::result::Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(args)
}

/// Runs the tool and returns its exit status. Usage and argument errors
/// exit with 1.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match parse_args(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Bounds(a) => cmd_bounds(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout),
        Command::Simulate(a) => cmd_simulate(a, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn with_output<F>(path: Option<&Path>, stdout: &mut dyn Write, body: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    match path {
        Some(p) => {
            let file = File::create(p)
                .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            body(stdout)?;
            stdout.flush()?;
        }
    }
    Ok(())
}

pub fn cmd_bounds(args: &BoundsArgs, stdout: &mut dyn Write) -> Result<i32> {
    let delta = ConfidenceLevel::new(args.delta)?;
    let (spec, class_key, class_value) = match (args.d, args.m) {
        (Some(d), None) => (HypothesisClassSpec::power_law(d)?, "d", d),
        (None, Some(m)) => (HypothesisClassSpec::explicit(m)?, "m", m),
        _ => return invalid("exactly one of --d and --m is required"),
    };
    let report = bound_report(args.n, &spec, args.a, delta, args.eps_s)?;
    let v = (args.n as f64 / args.a).floor() as u64;
    if v == 0 {
        return invalid(format!("n = {} and a = {} leave no validation examples", args.n, args.a));
    }
    let backend: BackendKind = args.backend.parse()?;

    let mut lines: Vec<(String, String)> = vec![
        ("n".into(), args.n.to_string()),
        (class_key.into(), g6(class_value)),
        ("a".into(), g6(args.a)),
        ("v".into(), v.to_string()),
        ("delta".into(), g6(args.delta)),
        ("eps_v".into(), g6(report.eps_v)),
        ("eps_w".into(), g6(report.eps_w)),
        ("delta_star".into(), g6(report.delta_star)),
        ("s".into(), g6(report.s)),
        ("w_star".into(), g6(report.w_star)),
        ("eps_for_s".into(), g6(report.eps_for_s)),
        ("backend".into(), args.backend.clone()),
    ];

    let single = match backend {
        BackendKind::Hoeffding => hoeffding_radius(v, delta)?,
        BackendKind::ExactBinomial => {
            let k = args
                .k
                .ok_or_else(|| Error::InvalidArgument("--backend binomial requires --k".into()))?;
            let upper = binomial_upper_bound(k, v, delta)?;
            let rate = k as f64 / v as f64;
            lines.push(("k".into(), k.to_string()));
            lines.push(("validation_error".into(), g6(rate)));
            lines.push(("binomial_upper".into(), g6(upper)));
            upper - rate
        }
    };
    lines.push(("single_radius".into(), g6(single)));
    if let Some(gap) = args.disagreement {
        if !(0.0..=1.0).contains(&gap) {
            return invalid(format!("--Delta must lie in [0, 1], got {gap}"));
        }
        let eps_w = gap + single;
        lines.push(("Delta".into(), g6(gap)));
        lines.push(("eps_w_at_Delta".into(), g6(eps_w)));
        lines.push(("wag_beats_svoosh".into(), (eps_w < report.eps_v).to_string()));
    }
    if report.delta_star < 0.0 {
        lines.push((
            "note".into(),
            "WAG cannot outperform SVOOSH at this configuration".into(),
        ));
    }

    with_output(args.out.as_deref(), stdout, |w| {
        for (k, v) in &lines {
            writeln!(w, "{k}={v}")?;
        }
        Ok(())
    })?;

    if let Some(path) = &args.csv {
        let mut sink = std::io::sink();
        with_output(Some(path), &mut sink, |w| {
            writeln!(w, "n,{class_key},a,delta,eps_v,eps_w,delta_star,s,w_star,eps_for_s")?;
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{}",
                args.n,
                g6(class_value),
                g6(args.a),
                g6(args.delta),
                g6(report.eps_v),
                g6(report.eps_w),
                g6(report.delta_star),
                g6(report.s),
                g6(report.w_star),
                g6(report.eps_for_s)
            )
        })?;
    }
    Ok(0)
}

pub fn sweep_config(args: &SweepArgs) -> Result<SweepConfig> {
    Ok(SweepConfig {
        n_min: args.n_min,
        n_max: args.n_max,
        n_steps: args.n_steps,
        dimension: args.d,
        a_list: parse_a_list(&args.a)?,
        delta: ConfidenceLevel::new(args.delta)?,
        scale: args.grid_scale.parse::<GridScale>()?,
    })
}

pub fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write) -> Result<i32> {
    let points = sweep(&sweep_config(args)?)?;
    with_output(args.out.as_deref(), stdout, |w| write_sweep_csv(w, &points))?;
    Ok(0)
}

pub fn cmd_simulate(
    args: &SimulateArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let delta = ConfidenceLevel::new(args.delta)?;
    let method = match args.method.parse::<Method>()? {
        Method::Wag => {
            let a = args
                .a
                .ok_or_else(|| Error::InvalidArgument("--method wag requires --a".into()))?;
            validation_size(args.n, a)?;
            MethodConfig::Wag {
                a,
                backend: args.backend.parse()?,
            }
        }
        Method::Svoosh => MethodConfig::Svoosh,
    };
    let truth = parse_truth_intervals(&args.truth)?;
    let template = SyntheticTaskSpec::new(truth, args.eta, args.n, args.ntest, args.seed)?;
    let class = GridClassSpec::new(args.grid, args.k)?;
    let run = monte_carlo(&template, &class, &method, delta, args.trials, args.seed)?;

    with_output(args.out.as_deref(), stdout, |w| write_trial_csv(w, &run.records))?;

    let s = &run.summary;
    let threshold = coverage_threshold(delta, s.trials);
    let ok = s.failure_rate <= threshold;
    writeln!(
        stderr,
        "method={} trials={} failures={} failure_rate={} threshold={} mean_Delta={} mean_bound={} mean_test_error={} coverage={}",
        method.method(),
        s.trials,
        s.failures,
        g6(s.failure_rate),
        g6(threshold),
        g6(s.mean_disagreement),
        g6(s.mean_bound),
        g6(s.mean_test_error),
        if ok { "ok" } else { "failed" }
    )?;
    Ok(if ok { 0 } else { EXIT_COVERAGE_FAILED })
}

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::classifier::{disagreement_rate, empirical_error, GridClassSpec};
use super::erm::train_erm_intervals;
use super::task::{generate_task, unlabeled_pool, LabeledSample, SyntheticTaskSpec};
use crate::bounds::{
    nontransductive_range, svoosh_radius, wag_radius, BackendKind, ConcentrationBackend,
    ConfidenceLevel, HypothesisClassSpec,
};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Wag,
    Svoosh,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Wag => "wag",
            Self::Svoosh => "svoosh",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wag" => Ok(Self::Wag),
            "svoosh" => Ok(Self::Svoosh),
            other => Err(Error::Parse(format!("unknown method `{other}`"))),
        }
    }
}

/// One realized bound against the realized test error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub method: Method,
    /// Holdout validation error (WAG) or full-data training error (SVOOSH).
    pub anchor_error: f64,
    /// Holdout/full-data disagreement; 0 for SVOOSH.
    pub disagreement: f64,
    pub bound_value: f64,
    /// Full-data classifier error on the test pool.
    pub test_error: f64,
    pub holds: bool,
}

impl TrialOutcome {
    fn new(method: Method, anchor_error: f64, disagreement: f64, eps: f64, test_error: f64) -> Self {
        let bound_value = anchor_error + eps;
        Self {
            method,
            anchor_error,
            disagreement,
            bound_value,
            test_error,
            holds: test_error <= bound_value,
        }
    }
}

/// `v = floor(n / a)`, rejecting splits that leave either side empty.
pub fn validation_size(n_train: usize, a: f64) -> Result<usize> {
    crate::bounds::check_divisor(a)?;
    let v = (n_train as f64 / a).floor() as usize;
    if v == 0 || v >= n_train {
        return invalid(format!(
            "split n = {n_train}, a = {a} leaves v = {v}; need 1 <= v < n"
        ));
    }
    Ok(v)
}

struct WagFit {
    anchor_error: f64,
    v: usize,
    holdout: super::Classifier,
    full: super::Classifier,
    test: Vec<LabeledSample>,
}

fn fit_wag(task: &SyntheticTaskSpec, class: &GridClassSpec, a: f64) -> Result<WagFit> {
    let v = validation_size(task.n_train, a)?;
    let (train, test) = generate_task(task);
    let (fit, withheld) = train.split_at(train.len() - v);
    let holdout = train_erm_intervals(fit, class)?;
    let full = train_erm_intervals(&train, class)?;
    Ok(WagFit {
        anchor_error: empirical_error(&holdout, withheld)?,
        v,
        holdout,
        full,
        test,
    })
}

/// Withhold the last `floor(n / a)` training samples, validate a holdout
/// classifier on them, and add the exact holdout/full-data disagreement on
/// the test inputs.
pub fn run_wag_trial(
    task: &SyntheticTaskSpec,
    class: &GridClassSpec,
    a: f64,
    delta: ConfidenceLevel,
    backend: &dyn ConcentrationBackend,
) -> Result<TrialOutcome> {
    let fit = fit_wag(task, class, a)?;
    let inputs: Vec<f64> = fit.test.iter().map(|s| s.x).collect();
    let gap = disagreement_rate(&fit.holdout, &fit.full, &inputs)?;
    let eps = wag_radius(fit.v as u64, delta, gap, backend)?;
    let test_error = empirical_error(&fit.full, &fit.test)?;
    Ok(TrialOutcome::new(Method::Wag, fit.anchor_error, gap, eps, test_error))
}

/// WAG with the disagreement estimated on `t` unlabeled inputs drawn aside,
/// splitting `delta` equally between the two estimates.
pub fn run_wag_trial_nontransductive(
    task: &SyntheticTaskSpec,
    class: &GridClassSpec,
    a: f64,
    delta: ConfidenceLevel,
    t: usize,
    backend: &dyn ConcentrationBackend,
) -> Result<TrialOutcome> {
    if t == 0 {
        return invalid("unlabeled pool size must be positive");
    }
    let fit = fit_wag(task, class, a)?;
    let pool = unlabeled_pool(task, t);
    let gap_hat = disagreement_rate(&fit.holdout, &fit.full, &pool)?;
    let (delta_w, delta_t) = delta.halve();
    let range = nontransductive_range(fit.v as u64, delta_w, gap_hat, t as u64, delta_t, backend)?;
    let test_error = empirical_error(&fit.full, &fit.test)?;
    Ok(TrialOutcome::new(Method::Wag, fit.anchor_error, gap_hat, range, test_error))
}

/// Train on everything, anchor at the training error, and pay for the
/// `m_exact` hypotheses of the grid class.
pub fn run_svoosh_trial(
    task: &SyntheticTaskSpec,
    class: &GridClassSpec,
    delta: ConfidenceLevel,
) -> Result<TrialOutcome> {
    let (train, test) = generate_task(task);
    let full = train_erm_intervals(&train, class)?;
    let spec = HypothesisClassSpec::explicit(class.m_exact())?;
    let eps = svoosh_radius(&spec, train.len() as u64, delta)?;
    let anchor = empirical_error(&full, &train)?;
    let test_error = empirical_error(&full, &test)?;
    Ok(TrialOutcome::new(Method::Svoosh, anchor, 0.0, eps, test_error))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MethodConfig {
    Wag { a: f64, backend: BackendKind },
    Svoosh,
}

impl MethodConfig {
    pub fn method(&self) -> Method {
        match self {
            Self::Wag { .. } => Method::Wag,
            Self::Svoosh => Method::Svoosh,
        }
    }

    pub fn run(
        &self,
        task: &SyntheticTaskSpec,
        class: &GridClassSpec,
        delta: ConfidenceLevel,
    ) -> Result<TrialOutcome> {
        match *self {
            Self::Wag { a, backend } => run_wag_trial(task, class, a, delta, &backend),
            Self::Svoosh => run_svoosh_trial(task, class, delta),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub outcome: TrialOutcome,
}

/// Per-trial seed: `base_seed XOR trial_index`.
pub fn trial_seed(base_seed: u64, trial: u64) -> u64 {
    base_seed ^ trial
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloSummary {
    pub trials: u64,
    pub failures: u64,
    pub failure_rate: f64,
    pub mean_disagreement: f64,
    pub mean_bound: f64,
    pub mean_test_error: f64,
}

impl MonteCarloSummary {
    /// Aggregates records in trial-index order regardless of the order they
    /// are given in, so the floating-point sums are reproducible.
    pub fn from_records(records: &[TrialRecord]) -> Result<Self> {
        if records.is_empty() {
            return invalid("summary of zero trials");
        }
        let mut sorted: Vec<&TrialRecord> = records.iter().collect();
        sorted.sort_by_key(|r| r.trial);
        let trials = sorted.len() as u64;
        let failures = sorted.iter().filter(|r| !r.outcome.holds).count() as u64;
        let mean = |f: fn(&TrialOutcome) -> f64| {
            sorted.iter().map(|r| f(&r.outcome)).sum::<f64>() / trials as f64
        };
        Ok(Self {
            trials,
            failures,
            failure_rate: failures as f64 / trials as f64,
            mean_disagreement: mean(|o| o.disagreement),
            mean_bound: mean(|o| o.bound_value),
            mean_test_error: mean(|o| o.test_error),
        })
    }
}

/// Largest failure rate consistent with a `1 - delta` guarantee over
/// `trials` runs: `delta + 3 sqrt(delta (1 - delta) / trials)`.
pub fn coverage_threshold(delta: ConfidenceLevel, trials: u64) -> f64 {
    let d = delta.get();
    d + 3.0 * (d * (1.0 - d) / trials as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloRun {
    pub records: Vec<TrialRecord>,
    pub summary: MonteCarloSummary,
}

/// Runs `trials` independent trials in parallel. Trial `i` uses
/// `template.with_seed(base_seed ^ i)`; records come back in index order.
pub fn monte_carlo(
    template: &SyntheticTaskSpec,
    class: &GridClassSpec,
    method: &MethodConfig,
    delta: ConfidenceLevel,
    trials: u64,
    base_seed: u64,
) -> Result<MonteCarloRun> {
    if trials == 0 {
        return invalid("need at least one trial");
    }
    let records = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let seed = trial_seed(base_seed, trial);
            let outcome = method.run(&template.with_seed(seed), class, delta)?;
            Ok(TrialRecord {
                trial,
                seed,
                outcome,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = MonteCarloSummary::from_records(&records)?;
    Ok(MonteCarloRun { records, summary })
}

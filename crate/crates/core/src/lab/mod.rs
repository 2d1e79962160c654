//! Synthetic learning tasks and Monte Carlo coverage checks for the WAG and
//! SVOOSH bounds.

mod classifier;
mod erm;
mod task;
mod trial;

pub use classifier::{disagreement_rate, empirical_error, Classifier, GridClassSpec};
pub use erm::train_erm_intervals;
pub use task::{
    generate_task, parse_truth_intervals, unlabeled_pool, LabeledSample, SyntheticTaskSpec,
    PRESET_TRUTH,
};
pub use trial::{
    coverage_threshold, monte_carlo, run_svoosh_trial, run_wag_trial,
    run_wag_trial_nontransductive, trial_seed, validation_size, Method, MethodConfig,
    MonteCarloRun, MonteCarloSummary, TrialOutcome, TrialRecord,
};

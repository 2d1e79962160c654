//! Bound calculus: concentration backends, SVOOSH and WAG ranges, the
//! critical disagreement and exact binomial inversion.

mod backend;
mod binomial;
mod calculus;
mod class;

pub use backend::{
    hoeffding_radius, hoeffding_radius_real, hoeffding_tail, BackendKind, ConcentrationBackend,
    ExactBinomial, Hoeffding,
};
pub use binomial::{binomial_cdf, binomial_ln_cdf, binomial_upper_bound};
pub use calculus::{
    bound_report, critical_delta, critical_delta_floored, max_holdout_train_size,
    min_selection_cost, nontransductive_range, selection_cost_s, svoosh_radius, svoosh_tail,
    wag_radius, wag_tail, BoundReport, DisagreementBound, SelectionCost,
};
pub(crate) use calculus::check_divisor;
pub use class::{hypothesis_count, ConfidenceLevel, HypothesisClassSpec};

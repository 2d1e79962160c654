//! Closed-form bound ranges for SVOOSH and WAG, the crossover point between
//! them, and the derived sample-budget quantities.

use super::backend::{hoeffding_radius, hoeffding_radius_real, ConcentrationBackend};
use super::class::{check_eps, check_rate, check_samples, ConfidenceLevel, HypothesisClassSpec};
use crate::error::{invalid, Result};

/// `min(1, m(n) exp(-2 n eps^2))`, evaluated in the log domain.
pub fn svoosh_tail(spec: &HypothesisClassSpec, n: u64, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    let ln = spec.ln_count(n)? - 2.0 * n as f64 * eps * eps;
    Ok(ln.min(0.0).exp())
}

/// `sqrt((ln(1/delta) + ln m(n)) / (2n))`.
pub fn svoosh_radius(spec: &HypothesisClassSpec, n: u64, delta: ConfidenceLevel) -> Result<f64> {
    let ln_m = spec.ln_count(n)?;
    Ok(((delta.ln_inv() + ln_m) / (2.0 * n as f64)).sqrt())
}

/// `b(v, eps - Delta)`; vacuous (exactly 1) once `eps <= Delta`.
pub fn wag_tail(
    v: u64,
    eps: f64,
    disagreement: f64,
    backend: &dyn ConcentrationBackend,
) -> Result<f64> {
    check_samples(v)?;
    check_rate("disagreement", disagreement)?;
    if eps.is_nan() {
        return invalid("deviation eps is NaN");
    }
    if eps <= disagreement {
        return Ok(1.0);
    }
    backend.tail(v, eps - disagreement)
}

/// `Delta + radius(v, delta)`.
pub fn wag_radius(
    v: u64,
    delta: ConfidenceLevel,
    disagreement: f64,
    backend: &dyn ConcentrationBackend,
) -> Result<f64> {
    check_samples(v)?;
    check_rate("disagreement", disagreement)?;
    Ok(disagreement + backend.radius(v, delta)?)
}

/// Extra examples that simultaneous validation effectively spends on
/// selecting a hypothesis: `s = ln m(n) / (2 eps^2)`.
///
/// `s` may exceed `n`; that only says SVOOSH is vacuous at this `eps`.
pub fn selection_cost_s(spec: &HypothesisClassSpec, n: u64, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return invalid(format!("selection cost needs eps > 0, got {eps}"));
    }
    Ok(spec.ln_count(n)? / (2.0 * eps * eps))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectionCost {
    pub s: u64,
    /// False when even `n - 1` withheld-for-selection examples cannot make
    /// the single-classifier tail as loose as the simultaneous one; `s` is
    /// then `n - 1`.
    pub attainable: bool,
}

/// Smallest integer `s` in `[0, n - 1]` whose single-classifier tail
/// `b(n - s, eps)` is at least the simultaneous-validation tail
/// `min(1, m(n) b(n, eps))`, i.e. the backend-generic analogue of
/// [`selection_cost_s`]. For Hoeffding this is `ceil(s)`.
///
/// Binary search over `s`, relying on the tail being nonincreasing in the
/// sample count.
pub fn min_selection_cost(
    backend: &dyn ConcentrationBackend,
    spec: &HypothesisClassSpec,
    n: u64,
    eps: f64,
) -> Result<SelectionCost> {
    check_samples(n)?;
    if !(eps > 0.0 && eps.is_finite()) {
        return invalid(format!("selection cost needs eps > 0, got {eps}"));
    }
    let ln_target = (spec.ln_count(n)? + backend.ln_tail(n, eps)?).min(0.0);
    let loose_enough = |s: u64| -> Result<bool> { Ok(backend.ln_tail(n - s, eps)? >= ln_target) };

    if !loose_enough(n - 1)? {
        return Ok(SelectionCost {
            s: n - 1,
            attainable: false,
        });
    }
    let (mut lo, mut hi) = (0u64, n - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if loose_enough(mid)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(SelectionCost {
        s: lo,
        attainable: true,
    })
}

/// Largest holdout training set for which WAG can still beat SVOOSH when
/// `m(n) = n^d`: `w* = d ln(n) / (2 eps^2)`.
pub fn max_holdout_train_size(dimension: f64, n: u64, eps: f64) -> Result<f64> {
    let spec = HypothesisClassSpec::power_law(dimension)?;
    selection_cost_s(&spec, n, eps)
}

/// Disagreement rate below which WAG (validating on `n / a` examples) has a
/// narrower bound range than SVOOSH over `m(n) = n^d` hypotheses:
///
/// `(sqrt(ln(1/delta) + d ln n) - sqrt(a ln(1/delta))) / sqrt(2n)`.
///
/// Negative values are returned as is: WAG cannot win at any disagreement.
pub fn critical_delta(n: u64, dimension: f64, a: f64, delta: ConfidenceLevel) -> Result<f64> {
    check_samples(n)?;
    check_divisor(a)?;
    let spec = HypothesisClassSpec::power_law(dimension)?;
    let ln_inv = delta.ln_inv();
    let nf = n as f64;
    Ok(((ln_inv + spec.ln_count(n)?).sqrt() - (a * ln_inv).sqrt()) / (2.0 * nf).sqrt())
}

pub(crate) fn check_divisor(a: f64) -> Result<()> {
    if a > 1.0 && a.is_finite() {
        Ok(())
    } else {
        invalid(format!("split divisor a must exceed 1, got {a}"))
    }
}

/// Empirical disagreement measured on `t` unlabeled examples, widened into
/// an upper bound on the distributional disagreement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisagreementBound {
    pub delta_hat: f64,
    pub t: u64,
    pub eps_t: f64,
    pub delta_t: ConfidenceLevel,
}

impl DisagreementBound {
    pub fn new(
        delta_hat: f64,
        t: u64,
        delta_t: ConfidenceLevel,
        backend: &dyn ConcentrationBackend,
    ) -> Result<Self> {
        check_rate("empirical disagreement", delta_hat)?;
        let eps_t = backend.radius(t, delta_t)?;
        Ok(Self {
            delta_hat,
            t,
            eps_t,
            delta_t,
        })
    }

    pub fn upper(&self) -> f64 {
        self.delta_hat + self.eps_t
    }
}

/// WAG bound range when the disagreement itself must be estimated from `t`
/// unlabeled examples: `(Delta_hat + eps_T) + radius(v, delta_w)`.
///
/// Holds with probability at least `1 - delta_w - delta_t` by the union
/// bound. [`ConfidenceLevel::halve`] gives the equal split.
pub fn nontransductive_range(
    v: u64,
    delta_w: ConfidenceLevel,
    delta_hat: f64,
    t: u64,
    delta_t: ConfidenceLevel,
    backend: &dyn ConcentrationBackend,
) -> Result<f64> {
    check_samples(v)?;
    if delta_w.get() + delta_t.get() >= 1.0 {
        return invalid("combined failure probability delta_w + delta_t must stay below 1");
    }
    let gap = DisagreementBound::new(delta_hat, t, delta_t, backend)?;
    Ok(gap.upper() + backend.radius(v, delta_w)?)
}

/// All quantities of the WAG/SVOOSH comparison for one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub eps_v: f64,
    /// WAG range at `Delta = delta_star`, so equal to `eps_v` up to rounding.
    pub eps_w: f64,
    pub delta_star: f64,
    pub s: f64,
    pub w_star: f64,
    /// Deviation at which `s` and `w_star` were evaluated.
    pub eps_for_s: f64,
}

/// Builds a [`BoundReport`] with the continuous split `v = n / a`.
///
/// `delta_star` is `eps_v - hoeffding_radius(n / a)`, which equals
/// [`critical_delta`] for power-law classes and generalizes it to explicit
/// counts. `eps_for_s` defaults to `eps_v`.
pub fn bound_report(
    n: u64,
    spec: &HypothesisClassSpec,
    a: f64,
    delta: ConfidenceLevel,
    eps_for_s: Option<f64>,
) -> Result<BoundReport> {
    check_samples(n)?;
    check_divisor(a)?;
    let eps_v = svoosh_radius(spec, n, delta)?;
    let single = hoeffding_radius_real(n as f64 / a, delta);
    let delta_star = eps_v - single;
    let eps_for_s = eps_for_s.unwrap_or(eps_v);
    let s = selection_cost_s(spec, n, eps_for_s)?;
    // w* = ln m(n) / (2 eps^2), which is d ln n / (2 eps^2) for n^d.
    let w_star = s;
    Ok(BoundReport {
        eps_v,
        eps_w: delta_star + single,
        delta_star,
        s,
        w_star,
        eps_for_s,
    })
}

/// SVOOSH minus WAG at zero disagreement when `v = floor(n / a)` is used
/// instead of the continuous `n / a`.
pub fn critical_delta_floored(
    n: u64,
    spec: &HypothesisClassSpec,
    a: f64,
    delta: ConfidenceLevel,
) -> Result<f64> {
    check_divisor(a)?;
    let v = (n as f64 / a).floor() as u64;
    Ok(svoosh_radius(spec, n, delta)? - hoeffding_radius(v, delta)?)
}

//! Exact binomial tails, summed in the log domain.

use super::backend::hoeffding_radius;
use super::class::{check_samples, ConfidenceLevel};
use crate::error::{invalid, Result};

const BISECTION_TOL: f64 = 1e-10;
const MAX_BISECTIONS: usize = 200;
// Terms this far (in nats) below the running maximum no longer move the sum.
const NEGLIGIBLE: f64 = 50.0;

pub(crate) fn ln_choose(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (0..k)
        .map(|i| ((n - i) as f64 / (i + 1) as f64).ln())
        .sum()
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln P(X <= k)` for `X ~ Binomial(n, p)`, given `ln C(n, k)`.
///
/// Sums the pmf downward from `k` using the ratio
/// `pmf(j-1) / pmf(j) = j (1-p) / ((n-j+1) p)`.
fn ln_cdf_with_choose(k: u64, n: u64, p: f64, ln_choose_nk: f64) -> f64 {
    if k >= n || p <= 0.0 {
        return 0.0;
    }
    if p >= 1.0 {
        return f64::NEG_INFINITY;
    }
    let ln_p = p.ln();
    let ln_q = (-p).ln_1p();
    let ln_odds = ln_q - ln_p;
    let mode = (n + 1) as f64 * p;

    let mut term = ln_choose_nk + k as f64 * ln_p + (n - k) as f64 * ln_q;
    let mut acc = term;
    let mut peak = term;
    let mut j = k;
    while j > 0 {
        term += (j as f64 / (n - j + 1) as f64).ln() + ln_odds;
        j -= 1;
        acc = log_add(acc, term);
        peak = peak.max(term);
        if (j as f64) < mode && term < peak - NEGLIGIBLE {
            break;
        }
    }
    acc.min(0.0)
}

/// `ln P(X <= k)` for `X ~ Binomial(n, p)`.
pub fn binomial_ln_cdf(k: u64, n: u64, p: f64) -> f64 {
    if k >= n {
        return 0.0;
    }
    ln_cdf_with_choose(k, n, p, ln_choose(n, k))
}

/// `P(X <= k)` for `X ~ Binomial(n, p)`.
pub fn binomial_cdf(k: u64, n: u64, p: f64) -> f64 {
    binomial_ln_cdf(k, n, p).exp()
}

/// Smallest `p` in `[k/n, 1]` with `P(Binomial(n, p) <= k) <= delta`.
///
/// This is the one-sided exact (Clopper-Pearson style) upper confidence
/// bound on a true error rate after observing `k` errors in `n` trials.
/// Found by bisection to absolute tolerance `1e-10`; the returned point
/// always satisfies the inequality.
pub fn binomial_upper_bound(k: u64, n: u64, delta: ConfidenceLevel) -> Result<f64> {
    check_samples(n)?;
    if k > n {
        return invalid(format!("error count {k} exceeds sample count {n}"));
    }
    if k == n {
        return Ok(1.0);
    }
    let ln_delta = delta.get().ln();
    let ln_c = ln_choose(n, k);
    let holds = |p: f64| ln_cdf_with_choose(k, n, p, ln_c) <= ln_delta;

    let mut lo = k as f64 / n as f64;
    if holds(lo) {
        return Ok(lo);
    }
    // Hoeffding's inequality guarantees the exact bound sits below this.
    let mut hi = (lo + hoeffding_radius(n, delta)? + BISECTION_TOL).min(1.0);
    if !holds(hi) {
        hi = 1.0;
    }
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= BISECTION_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Worst case over the true rate of the probability that an empirical mean
/// of `n` Bernoulli draws falls at least `eps` below its expectation:
/// `max_k P(Binomial(n, k/n + eps) <= k)` over `k` with `k/n + eps <= 1`.
pub(crate) fn worst_case_ln_tail(n: u64, eps: f64) -> f64 {
    if eps <= 0.0 {
        return 0.0;
    }
    let nf = n as f64;
    let mut best = f64::NEG_INFINITY;
    let mut ln_c = 0.0;
    for k in 0..n {
        if k > 0 {
            ln_c += ((n - k + 1) as f64 / k as f64).ln();
        }
        let p = k as f64 / nf + eps;
        if p >= 1.0 {
            break;
        }
        best = best.max(ln_cdf_with_choose(k, n, p, ln_c));
    }
    best
}

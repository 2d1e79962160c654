use std::fmt;
use std::str::FromStr;

use super::binomial::worst_case_ln_tail;
use super::class::{check_eps, check_samples, ConfidenceLevel};
use crate::error::{Error, Result};

/// A deviation bound `b(n, eps)` for the mean of `n` i.i.d. `[0, 1]`
/// losses, paired with its inverse `eps(n, delta)`.
///
/// Implementations keep `tail(n, 0) == 1`, keep `tail` nonincreasing in
/// `eps`, and guarantee `tail(n, radius(n, delta)) <= delta`.
pub trait ConcentrationBackend: Send + Sync {
    fn tail(&self, n: u64, eps: f64) -> Result<f64>;

    fn radius(&self, n: u64, delta: ConfidenceLevel) -> Result<f64>;

    /// `ln tail(n, eps)`, for callers that multiply tails by huge
    /// hypothesis counts.
    fn ln_tail(&self, n: u64, eps: f64) -> Result<f64> {
        Ok(self.tail(n, eps)?.ln())
    }

    fn name(&self) -> &'static str;
}

/// `min(1, exp(-2 n eps^2))`.
pub fn hoeffding_tail(n: u64, eps: f64) -> Result<f64> {
    hoeffding_ln_tail(n, eps).map(f64::exp)
}

fn hoeffding_ln_tail(n: u64, eps: f64) -> Result<f64> {
    check_samples(n)?;
    check_eps(eps)?;
    Ok((-2.0 * n as f64 * eps * eps).min(0.0))
}

/// `sqrt(ln(1/delta) / (2n))`.
pub fn hoeffding_radius(n: u64, delta: ConfidenceLevel) -> Result<f64> {
    check_samples(n)?;
    Ok(hoeffding_radius_real(n as f64, delta))
}

/// [`hoeffding_radius`] at a real-valued sample count, as used by the
/// continuous crossover formula where `v = n / a`.
pub fn hoeffding_radius_real(n: f64, delta: ConfidenceLevel) -> f64 {
    (delta.ln_inv() / (2.0 * n)).sqrt()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Hoeffding;

impl ConcentrationBackend for Hoeffding {
    fn tail(&self, n: u64, eps: f64) -> Result<f64> {
        hoeffding_tail(n, eps)
    }

    fn radius(&self, n: u64, delta: ConfidenceLevel) -> Result<f64> {
        hoeffding_radius(n, delta)
    }

    fn ln_tail(&self, n: u64, eps: f64) -> Result<f64> {
        hoeffding_ln_tail(n, eps)
    }

    fn name(&self) -> &'static str {
        "hoeffding"
    }
}

/// Exact binomial deviation bound, worst case over the true error rate.
///
/// `tail(n, eps) = max_k P(Binomial(n, k/n + eps) <= k)`, which is never
/// looser than Hoeffding. Cost grows roughly as `n^1.5` per tail evaluation.
/// Monotonicity in `n` is checked numerically rather than proven.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExactBinomial;

impl ExactBinomial {
    const TOL: f64 = 1e-10;
}

impl ConcentrationBackend for ExactBinomial {
    fn tail(&self, n: u64, eps: f64) -> Result<f64> {
        self.ln_tail(n, eps).map(f64::exp)
    }

    fn ln_tail(&self, n: u64, eps: f64) -> Result<f64> {
        check_samples(n)?;
        check_eps(eps)?;
        Ok(worst_case_ln_tail(n, eps))
    }

    fn radius(&self, n: u64, delta: ConfidenceLevel) -> Result<f64> {
        check_samples(n)?;
        let ln_delta = delta.get().ln();
        let mut lo = 0.0;
        let mut hi = hoeffding_radius(n, delta)?.min(1.0);
        if worst_case_ln_tail(n, hi) > ln_delta {
            // Hoeffding dominates, so this only guards rounding.
            hi = 1.0;
        }
        while hi - lo > Self::TOL {
            let mid = 0.5 * (lo + hi);
            if worst_case_ln_tail(n, mid) <= ln_delta {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    fn name(&self) -> &'static str {
        "binomial"
    }
}

/// Runtime selection between the shipped backends.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum BackendKind {
    #[default]
    Hoeffding,
    ExactBinomial,
}

impl BackendKind {
    fn inner(&self) -> &dyn ConcentrationBackend {
        match self {
            Self::Hoeffding => &Hoeffding,
            Self::ExactBinomial => &ExactBinomial,
        }
    }
}

impl ConcentrationBackend for BackendKind {
    fn tail(&self, n: u64, eps: f64) -> Result<f64> {
        self.inner().tail(n, eps)
    }

    fn radius(&self, n: u64, delta: ConfidenceLevel) -> Result<f64> {
        self.inner().radius(n, delta)
    }

    fn ln_tail(&self, n: u64, eps: f64) -> Result<f64> {
        self.inner().ln_tail(n, eps)
    }

    fn name(&self) -> &'static str {
        self.inner().name()
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BackendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hoeffding" => Ok(Self::Hoeffding),
            "binomial" => Ok(Self::ExactBinomial),
            other => Err(Error::Parse(format!("unknown backend `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conf(d: f64) -> ConfidenceLevel {
        ConfidenceLevel::new(d).unwrap()
    }

    #[test]
    fn hoeffding_examples() {
        let t = hoeffding_tail(100, 0.1).unwrap();
        assert!((t - (-2.0f64).exp()).abs() < 1e-15);
        assert!((t - 0.135335).abs() < 1e-6);
        assert_eq!(hoeffding_tail(50, 0.0).unwrap(), 1.0);
        assert!((hoeffding_tail(200, 0.086541).unwrap() - 0.05).abs() < 1e-5);

        let r = hoeffding_radius(200, conf(0.05)).unwrap();
        assert!((r - (20f64.ln() / 400.0).sqrt()).abs() < 1e-15);
        assert!((r - 0.086541).abs() < 1e-6);
        let one = hoeffding_radius(1, conf((-2.0f64).exp())).unwrap();
        assert!((one - 1.0).abs() < 1e-15);
        // sqrt(ln 20 / 40000)
        let r = hoeffding_radius(20_000, conf(0.05)).unwrap();
        assert!((r - 0.0086541).abs() < 1e-7, "{r}");
    }

    #[test]
    fn hoeffding_errors() {
        assert!(hoeffding_tail(0, 0.1).is_err());
        assert!(hoeffding_tail(10, -0.1).is_err());
        assert!(hoeffding_tail(10, f64::NAN).is_err());
        assert!(hoeffding_radius(0, conf(0.1)).is_err());
    }

    #[test]
    fn binomial_backend_contract() {
        let b = ExactBinomial;
        for n in [1u64, 7, 30, 200] {
            assert_eq!(b.tail(n, 0.0).unwrap(), 1.0);
            for delta in [0.01, 0.05, 0.3] {
                let r = b.radius(n, conf(delta)).unwrap();
                assert!(b.tail(n, r).unwrap() <= delta * (1.0 + 1e-12), "n={n} delta={delta}");
                assert!(r <= hoeffding_radius(n, conf(delta)).unwrap() + 1e-9);
            }
            let mut prev = 1.0;
            for i in 0..=50 {
                let t = b.tail(n, i as f64 / 50.0).unwrap();
                assert!(t <= prev + 1e-15);
                assert!(t <= hoeffding_tail(n, i as f64 / 50.0).unwrap() + 1e-15);
                prev = t;
            }
        }
    }

    #[test]
    fn radius_vanishes_with_n() {
        for backend in [BackendKind::Hoeffding, BackendKind::ExactBinomial] {
            let small = backend.radius(10, conf(0.05)).unwrap();
            let big = backend.radius(5000, conf(0.05)).unwrap();
            assert!(big < small / 10.0, "{backend}: {small} -> {big}");
        }
        assert!(hoeffding_radius(1_000_000_000, conf(0.05)).unwrap() < 1e-4);
    }

    #[test]
    fn parse_backend() {
        assert_eq!("hoeffding".parse::<BackendKind>().unwrap(), BackendKind::Hoeffding);
        assert_eq!("binomial".parse::<BackendKind>().unwrap(), BackendKind::ExactBinomial);
        assert!("bernstein".parse::<BackendKind>().is_err());
    }
}

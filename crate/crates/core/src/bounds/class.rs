use crate::error::{invalid, Result};

/// Bound failure probability, strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ConfidenceLevel(f64);

impl ConfidenceLevel {
    pub fn new(delta: f64) -> Result<Self> {
        if delta > 0.0 && delta < 1.0 {
            Ok(Self(delta))
        } else {
            invalid(format!("delta must lie in (0, 1), got {delta}"))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `ln(1/delta)`, always positive.
    pub fn ln_inv(self) -> f64 {
        -self.0.ln()
    }

    /// Splits the failure budget in two equal halves for a union bound.
    pub fn halve(self) -> (Self, Self) {
        let half = Self(self.0 / 2.0);
        (half, half)
    }
}

/// Hypothesis-count model `m(n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HypothesisClassSpec {
    /// `m(n) = n^d`; `d` plays the role of a dimension.
    PowerLaw { dimension: f64 },
    /// A fixed, finite number of hypotheses.
    Explicit { count: f64 },
}

impl HypothesisClassSpec {
    pub fn power_law(dimension: f64) -> Result<Self> {
        if dimension.is_finite() && dimension > 0.0 {
            Ok(Self::PowerLaw { dimension })
        } else {
            invalid(format!("dimension must be positive, got {dimension}"))
        }
    }

    pub fn explicit(count: f64) -> Result<Self> {
        if count.is_finite() && count >= 1.0 {
            Ok(Self::Explicit { count })
        } else {
            invalid(format!("hypothesis count must be >= 1, got {count}"))
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Self::PowerLaw { dimension } => Self::power_law(dimension).map(drop),
            Self::Explicit { count } => Self::explicit(count).map(drop),
        }
    }

    /// `ln m(n)`. This is what every bound actually consumes, since `n^d`
    /// overflows `f64` for large `d`.
    pub fn ln_count(&self, n: u64) -> Result<f64> {
        check_samples(n)?;
        self.validate()?;
        Ok(match *self {
            Self::PowerLaw { dimension } => dimension * (n as f64).ln(),
            Self::Explicit { count } => count.ln(),
        })
    }
}

/// `m(n)` as a real number, without rounding. May be `+inf` when `n^d`
/// exceeds the `f64` range; use [`HypothesisClassSpec::ln_count`] for
/// arithmetic.
pub fn hypothesis_count(spec: &HypothesisClassSpec, n: u64) -> Result<f64> {
    check_samples(n)?;
    spec.validate()?;
    Ok(match *spec {
        HypothesisClassSpec::PowerLaw { dimension } => (n as f64).powf(dimension),
        HypothesisClassSpec::Explicit { count } => count,
    })
}

pub(crate) fn check_samples(n: u64) -> Result<()> {
    if n == 0 {
        invalid("sample count must be at least 1")
    } else {
        Ok(())
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps >= 0.0 && !eps.is_nan() {
        Ok(())
    } else {
        invalid(format!("deviation eps must be >= 0, got {eps}"))
    }
}

pub(crate) fn check_rate(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        invalid(format!("{name} must lie in [0, 1], got {x}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let d10 = HypothesisClassSpec::power_law(10.0).unwrap();
        let m = hypothesis_count(&d10, 1000).unwrap();
        assert!((m / 1e30 - 1.0).abs() < 1e-12);
        let d1 = HypothesisClassSpec::power_law(1.0).unwrap();
        assert_eq!(hypothesis_count(&d1, 7).unwrap(), 7.0);
        let e = HypothesisClassSpec::explicit(128.0).unwrap();
        assert_eq!(hypothesis_count(&e, 999).unwrap(), 128.0);
    }

    #[test]
    fn huge_power_law_stays_finite_in_log_domain() {
        let d = HypothesisClassSpec::power_law(200.0).unwrap();
        assert!(hypothesis_count(&d, 100_000).unwrap().is_infinite());
        let ln = d.ln_count(100_000).unwrap();
        assert!((ln - 200.0 * 100_000f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(ConfidenceLevel::new(0.0).is_err());
        assert!(ConfidenceLevel::new(1.0).is_err());
        assert!(ConfidenceLevel::new(f64::NAN).is_err());
        assert!(HypothesisClassSpec::power_law(0.0).is_err());
        assert!(HypothesisClassSpec::explicit(0.5).is_err());
        let d = HypothesisClassSpec::power_law(2.0).unwrap();
        assert!(hypothesis_count(&d, 0).is_err());
        // Hand-built variants bypass the constructors but not the checks.
        let bad = HypothesisClassSpec::PowerLaw { dimension: -1.0 };
        assert!(bad.ln_count(10).is_err());
    }

    #[test]
    fn count_is_at_least_one() {
        for n in [1u64, 2, 10, 1_000_000] {
            for spec in [
                HypothesisClassSpec::power_law(0.01).unwrap(),
                HypothesisClassSpec::power_law(30.0).unwrap(),
                HypothesisClassSpec::explicit(1.0).unwrap(),
            ] {
                assert!(hypothesis_count(&spec, n).unwrap() >= 1.0);
            }
        }
    }
}

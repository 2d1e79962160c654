//! Δ* and ε_V curves over a grid of sample sizes.

use std::fmt;
use std::str::FromStr;

use crate::bounds::{
    check_divisor, critical_delta, hoeffding_radius_real, svoosh_radius, ConfidenceLevel,
    HypothesisClassSpec,
};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum GridScale {
    #[default]
    Log,
    Linear,
}

impl FromStr for GridScale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log" => Ok(Self::Log),
            "linear" => Ok(Self::Linear),
            other => Err(Error::Parse(format!("unknown grid scale `{other}`"))),
        }
    }
}

impl fmt::Display for GridScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Log => "log",
            Self::Linear => "linear",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n_min: u64,
    pub n_max: u64,
    pub n_steps: usize,
    pub dimension: f64,
    pub a_list: Vec<f64>,
    pub delta: ConfidenceLevel,
    pub scale: GridScale,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return invalid(format!(
                "need 1 <= n_min <= n_max, got [{}, {}]",
                self.n_min, self.n_max
            ));
        }
        if self.n_steps == 0 {
            return invalid("n_steps must be positive");
        }
        if self.a_list.is_empty() {
            return invalid("at least one split divisor a is required");
        }
        for &a in &self.a_list {
            check_divisor(a)?;
        }
        HypothesisClassSpec::power_law(self.dimension)?;
        Ok(())
    }

    /// Sample sizes from `n_min` to `n_max` inclusive, rounded to integers,
    /// with duplicates from rounding removed.
    pub fn n_grid(&self) -> Vec<u64> {
        if self.n_steps == 1 || self.n_min == self.n_max {
            return vec![self.n_min];
        }
        let last = (self.n_steps - 1) as f64;
        let (lo, hi) = (self.n_min as f64, self.n_max as f64);
        let mut grid: Vec<u64> = (0..self.n_steps)
            .map(|i| {
                if i == 0 {
                    return self.n_min;
                }
                if i == self.n_steps - 1 {
                    return self.n_max;
                }
                let t = i as f64 / last;
                let x = match self.scale {
                    GridScale::Log => (lo.ln() + t * (hi.ln() - lo.ln())).exp(),
                    GridScale::Linear => lo + t * (hi - lo),
                };
                x.round() as u64
            })
            .collect();
        grid.dedup();
        grid
    }
}

/// One sweep row. `eps_w` is the WAG range at `Delta = delta_star`, i.e.
/// `delta_star + hoeffding_radius(n / a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub n: u64,
    pub dimension: f64,
    pub a: f64,
    pub delta: f64,
    pub eps_v: f64,
    pub eps_w: f64,
    pub delta_star: f64,
}

impl CurvePoint {
    pub fn compute(n: u64, dimension: f64, a: f64, delta: ConfidenceLevel) -> Result<Self> {
        let spec = HypothesisClassSpec::power_law(dimension)?;
        let eps_v = svoosh_radius(&spec, n, delta)?;
        let delta_star = critical_delta(n, dimension, a, delta)?;
        Ok(Self {
            n,
            dimension,
            a,
            delta: delta.get(),
            eps_v,
            eps_w: delta_star + hoeffding_radius_real(n as f64 / a, delta),
            delta_star,
        })
    }

    /// Single-classifier radius on `n / a` validation examples.
    pub fn single_radius(&self) -> f64 {
        self.eps_w - self.delta_star
    }
}

/// Rows ordered by `n`, then by `a` in the order given.
pub fn sweep(config: &SweepConfig) -> Result<Vec<CurvePoint>> {
    config.validate()?;
    let mut points = Vec::with_capacity(config.n_steps * config.a_list.len());
    for n in config.n_grid() {
        for &a in &config.a_list {
            points.push(CurvePoint::compute(n, config.dimension, a, config.delta)?);
        }
    }
    Ok(points)
}

/// Parses a comma-separated list of split divisors, e.g. `3,5,10`.
pub fn parse_a_list(s: &str) -> Result<Vec<f64>> {
    let list = s
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad split divisor `{part}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    for &a in &list {
        check_divisor(a)?;
    }
    Ok(list)
}

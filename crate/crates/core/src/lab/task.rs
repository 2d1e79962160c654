use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledSample {
    pub x: f64,
    pub y: bool,
}

/// A 1-D learning problem: uniform inputs on `[0, 1]`, positive labels on a
/// union of intervals, symmetric label noise.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticTaskSpec {
    truth: Vec<(f64, f64)>,
    noise: f64,
    pub n_train: usize,
    pub n_test: usize,
    pub seed: u64,
}

impl SyntheticTaskSpec {
    pub fn new(
        truth: Vec<(f64, f64)>,
        noise: f64,
        n_train: usize,
        n_test: usize,
        seed: u64,
    ) -> Result<Self> {
        check_intervals(&truth)?;
        if !(0.0..0.5).contains(&noise) {
            return invalid(format!("label noise must lie in [0, 0.5), got {noise}"));
        }
        if n_train == 0 || n_test == 0 {
            return invalid("train and test sizes must be positive");
        }
        Ok(Self {
            truth,
            noise,
            n_train,
            n_test,
            seed,
        })
    }

    /// Two positive regions, 10% label noise, 10 000 test points.
    pub fn preset(n_train: usize, seed: u64) -> Self {
        Self::new(PRESET_TRUTH.to_vec(), 0.1, n_train, 10_000, seed).expect("valid preset")
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }

    pub fn truth(&self) -> &[(f64, f64)] {
        &self.truth
    }

    pub fn noise(&self) -> f64 {
        self.noise
    }

    pub fn truth_label(&self, x: f64) -> bool {
        self.truth.iter().any(|&(lo, hi)| lo <= x && x <= hi)
    }
}

pub const PRESET_TRUTH: [(f64, f64); 2] = [(0.2, 0.45), (0.6, 0.8)];

fn check_intervals(truth: &[(f64, f64)]) -> Result<()> {
    let mut prev_hi = f64::NEG_INFINITY;
    for &(lo, hi) in truth {
        if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
            return invalid(format!("interval [{lo}, {hi}] is not inside [0, 1]"));
        }
        if lo <= prev_hi {
            return invalid("truth intervals must be sorted and disjoint");
        }
        prev_hi = hi;
    }
    Ok(())
}

/// Draws the train and test sets. Each sample consumes two uniforms from a
/// ChaCha8 stream keyed by `spec.seed`: the input, then the noise coin.
/// Training samples come first in the stream.
pub fn generate_task(spec: &SyntheticTaskSpec) -> (Vec<LabeledSample>, Vec<LabeledSample>) {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut draw = |count: usize| -> Vec<LabeledSample> {
        (0..count)
            .map(|_| {
                let x: f64 = rng.gen();
                let flip = rng.gen::<f64>() < spec.noise;
                LabeledSample {
                    x,
                    y: spec.truth_label(x) ^ flip,
                }
            })
            .collect()
    };
    let train = draw(spec.n_train);
    let test = draw(spec.n_test);
    (train, test)
}

/// `t` unlabeled inputs from the same input distribution, drawn on a
/// separate ChaCha stream so they never overlap the labeled data.
pub fn unlabeled_pool(spec: &SyntheticTaskSpec, t: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(1);
    (0..t).map(|_| rng.gen()).collect()
}

/// Parses `lo:hi,lo:hi,...` into a validated interval list. The empty string
/// (or `none`) is an all-negative truth.
pub fn parse_truth_intervals(s: &str) -> Result<Vec<(f64, f64)>> {
    let s = s.trim();
    if s.is_empty() || s == "none" {
        return Ok(Vec::new());
    }
    let bad = |part: &str| Error::Parse(format!("expected `lo:hi`, got `{part}`"));
    let intervals = s
        .split(',')
        .map(|part| {
            let (lo, hi) = part.split_once(':').ok_or_else(|| bad(part))?;
            let lo: f64 = lo.trim().parse().map_err(|_| bad(part))?;
            let hi: f64 = hi.trim().parse().map_err(|_| bad(part))?;
            Ok((lo, hi))
        })
        .collect::<Result<Vec<_>>>()?;
    check_intervals(&intervals)?;
    Ok(intervals)
}

use std::fmt;

use super::task::LabeledSample;
use crate::error::{invalid, Result};

/// Unions of at most `max_intervals` grid-aligned intervals over `[0, 1]`,
/// with `grid + 1` candidate cut points `0, 1/G, ..., 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridClassSpec {
    grid: u32,
    max_intervals: u32,
}

impl GridClassSpec {
    pub fn new(grid: u32, max_intervals: u32) -> Result<Self> {
        if grid == 0 {
            return invalid("grid resolution must be positive");
        }
        Ok(Self {
            grid,
            max_intervals,
        })
    }

    /// `G = 64`, `k = 2`.
    pub fn preset() -> Self {
        Self {
            grid: 64,
            max_intervals: 2,
        }
    }

    pub fn grid(&self) -> u32 {
        self.grid
    }

    pub fn max_intervals(&self) -> u32 {
        self.max_intervals
    }

    /// Number of distinct hypotheses: `sum_{j=0..k} C(G + 1, 2j)`, one term
    /// per choice of `2j` strictly increasing cut points.
    pub fn m_exact(&self) -> f64 {
        let cuts = self.grid as u64 + 1;
        (0..=self.max_intervals as u64)
            .map(|j| choose(cuts, 2 * j))
            .sum::<f64>()
    }
}

fn choose(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64).round()
}

/// Predicts 1 inside any of its intervals, 0 elsewhere.
///
/// Stored as strictly increasing cut indices `c_1 < c_2 < ...` on the grid;
/// consecutive pairs `[c_1/G, c_2/G)`, `[c_3/G, c_4/G)`, ... are the
/// positive intervals. An input belongs to cell `min(floor(x G), G - 1)`, so
/// intervals are half open except that `x = 1` joins the last cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Classifier {
    grid: u32,
    cuts: Vec<u32>,
}

impl Classifier {
    pub fn from_cuts(grid: u32, cuts: Vec<u32>) -> Result<Self> {
        if grid == 0 {
            return invalid("grid resolution must be positive");
        }
        if !cuts.len().is_multiple_of(2) {
            return invalid("cut list must have even length");
        }
        if cuts.windows(2).any(|w| w[0] >= w[1]) || cuts.last().is_some_and(|&c| c > grid) {
            return invalid("cuts must be strictly increasing grid indices in [0, G]");
        }
        Ok(Self { grid, cuts })
    }

    /// The constant-0 classifier.
    pub fn empty(grid: u32) -> Self {
        Self {
            grid,
            cuts: Vec::new(),
        }
    }

    pub fn grid(&self) -> u32 {
        self.grid
    }

    pub fn cuts(&self) -> &[u32] {
        &self.cuts
    }

    pub fn interval_count(&self) -> usize {
        self.cuts.len() / 2
    }

    /// Interval endpoints as reals.
    pub fn intervals(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let g = self.grid as f64;
        self.cuts
            .chunks_exact(2)
            .map(move |c| (c[0] as f64 / g, c[1] as f64 / g))
    }

    pub fn cell(&self, x: f64) -> u32 {
        cell_of(x, self.grid)
    }

    pub fn predict(&self, x: f64) -> bool {
        let cell = self.cell(x);
        // Number of cuts at or below the cell; odd means inside an interval.
        self.cuts.partition_point(|&c| c <= cell) % 2 == 1
    }

    /// Flips every prediction. May use one more interval than `self`.
    pub fn complement(&self) -> Self {
        let mut cuts = Vec::with_capacity(self.cuts.len() + 2);
        if self.cuts.first() != Some(&0) {
            cuts.push(0);
        }
        cuts.extend(
            self.cuts
                .iter()
                .copied()
                .filter(|&c| c != 0 && c != self.grid),
        );
        if self.cuts.last() != Some(&self.grid) {
            cuts.push(self.grid);
        }
        Self {
            grid: self.grid,
            cuts,
        }
    }

    pub fn belongs_to(&self, class: &GridClassSpec) -> bool {
        self.grid == class.grid && self.interval_count() <= class.max_intervals as usize
    }
}

impl fmt::Display for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cuts.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self
            .intervals()
            .map(|(lo, hi)| format!("[{lo}, {hi})"))
            .collect();
        f.write_str(&parts.join(" u "))
    }
}

pub(crate) fn cell_of(x: f64, grid: u32) -> u32 {
    let c = (x * grid as f64).floor();
    if c <= 0.0 {
        0
    } else {
        (c as u32).min(grid - 1)
    }
}

/// Fraction of samples the classifier gets wrong.
pub fn empirical_error(c: &Classifier, data: &[LabeledSample]) -> Result<f64> {
    if data.is_empty() {
        return invalid("empirical error of an empty sample");
    }
    let wrong = data.iter().filter(|s| c.predict(s.x) != s.y).count();
    Ok(wrong as f64 / data.len() as f64)
}

/// Fraction of inputs on which the two classifiers disagree. Bounds the
/// difference of their error rates on any labeling of the same inputs.
pub fn disagreement_rate(c1: &Classifier, c2: &Classifier, inputs: &[f64]) -> Result<f64> {
    if inputs.is_empty() {
        return invalid("disagreement over an empty input set");
    }
    let differ = inputs
        .iter()
        .filter(|&&x| c1.predict(x) != c2.predict(x))
        .count();
    Ok(differ as f64 / inputs.len() as f64)
}

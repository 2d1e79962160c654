//! Exact empirical risk minimization over grid interval unions.

use super::classifier::{cell_of, Classifier, GridClassSpec};
use super::task::LabeledSample;
use crate::error::{invalid, Result};

const INF: u64 = u64::MAX / 4;

/// Returns a classifier in `class` with the fewest training errors.
///
/// Ties go to the fewest intervals, then to the lexicographically smallest
/// cut sequence. A hypothesis is a labeling of the `G` grid cells with at
/// most `k` maximal runs of positive cells, so a suffix table
/// `best[cell][runs_left][previous_label]` solves the problem in `O(G k)`
/// after bucketing the samples.
pub fn train_erm_intervals(data: &[LabeledSample], class: &GridClassSpec) -> Result<Classifier> {
    if data.is_empty() {
        return invalid("cannot train on an empty sample");
    }
    let g = class.grid() as usize;
    let k = class.max_intervals() as usize;

    // Cost of labeling a cell 0 is its positives; 1 is its negatives.
    let mut pos = vec![0u64; g];
    let mut neg = vec![0u64; g];
    for s in data {
        let c = cell_of(s.x, class.grid()) as usize;
        if s.y {
            pos[c] += 1;
        } else {
            neg[c] += 1;
        }
    }

    let width = k + 1;
    let idx = |cell: usize, runs: usize, prev: usize| (cell * width + runs) * 2 + prev;
    let mut best = vec![INF; (g + 1) * width * 2];
    best[idx(g, 0, 0)] = 0;
    best[idx(g, 0, 1)] = 0;

    // Cost of each label choice at (cell, runs, prev) given the table below.
    let options = |best: &[u64], cell: usize, runs: usize, prev: usize| -> [u64; 2] {
        let zero = pos[cell].saturating_add(best[idx(cell + 1, runs, 0)]);
        let one = if prev == 1 {
            neg[cell].saturating_add(best[idx(cell + 1, runs, 1)])
        } else if runs > 0 {
            neg[cell].saturating_add(best[idx(cell + 1, runs - 1, 1)])
        } else {
            INF
        };
        [zero.min(INF), one.min(INF)]
    };

    for cell in (0..g).rev() {
        for runs in 0..=k {
            for prev in 0..2 {
                let [zero, one] = options(&best, cell, runs, prev);
                best[idx(cell, runs, prev)] = zero.min(one);
            }
        }
    }

    let runs_used = (0..=k)
        .min_by_key(|&j| (best[idx(0, j, 0)], j))
        .expect("k + 1 >= 1 choices");

    // Walk forward, cutting as early as optimality allows.
    let mut cuts = Vec::with_capacity(2 * runs_used);
    let mut runs = runs_used;
    let mut prev = 0usize;
    for cell in 0..g {
        let target = best[idx(cell, runs, prev)];
        let costs = options(&best, cell, runs, prev);
        let switch = 1 - prev;
        let label = if costs[switch] == target { switch } else { prev };
        if label != prev {
            cuts.push(cell as u32);
            if label == 1 {
                runs -= 1;
            }
        }
        prev = label;
    }
    if prev == 1 {
        cuts.push(g as u32);
    }
    debug_assert_eq!(runs, 0);
    Classifier::from_cuts(class.grid(), cuts)
}

#[cfg(test)]
mod tests {
    use super::super::classifier::empirical_error;
    use super::*;

    fn s(x: f64, y: bool) -> LabeledSample {
        LabeledSample { x, y }
    }

    #[test]
    fn realizable_single_interval() {
        let class = GridClassSpec::new(10, 1).unwrap();
        let data: Vec<_> = (0..50)
            .map(|i| {
                let x = (i as f64 + 0.5) / 50.0;
                s(x, (0.3..0.6).contains(&x))
            })
            .collect();
        let c = train_erm_intervals(&data, &class).unwrap();
        assert_eq!(empirical_error(&c, &data).unwrap(), 0.0);
        assert_eq!(c.cuts(), &[3, 6]);
    }

    #[test]
    fn all_negative_gives_empty_union() {
        let class = GridClassSpec::new(8, 3).unwrap();
        let data: Vec<_> = (0..20).map(|i| s(i as f64 / 20.0, false)).collect();
        assert_eq!(train_erm_intervals(&data, &class).unwrap(), Classifier::empty(8));
    }

    #[test]
    fn all_positive_uses_one_full_interval() {
        let class = GridClassSpec::new(8, 3).unwrap();
        let data: Vec<_> = (0..20).map(|i| s(i as f64 / 20.0, true)).collect();
        assert_eq!(train_erm_intervals(&data, &class).unwrap().cuts(), &[0, 8]);
    }

    #[test]
    fn tie_prefers_earliest_cuts() {
        // One positive point in cell 2; cells 0, 1 and 3 are empty, so any
        // interval covering cell 2 has zero errors. The earliest is [0, 3).
        let class = GridClassSpec::new(4, 1).unwrap();
        let c = train_erm_intervals(&[s(0.6, true)], &class).unwrap();
        assert_eq!(c.cuts(), &[0, 3]);
    }

    #[test]
    fn respects_interval_budget() {
        // Alternating cells: k = 1 cannot fit all three positive cells.
        let class = GridClassSpec::new(5, 1).unwrap();
        let data: Vec<_> = (0..5).map(|c| s(c as f64 / 5.0 + 0.1, c % 2 == 0)).collect();
        let c = train_erm_intervals(&data, &class).unwrap();
        assert!(c.belongs_to(&class));
        assert_eq!(empirical_error(&c, &data).unwrap(), 0.4);
    }

    #[test]
    fn k_zero_is_constant() {
        let class = GridClassSpec::new(3, 0).unwrap();
        let data = [s(0.1, true), s(0.5, true)];
        assert_eq!(train_erm_intervals(&data, &class).unwrap(), Classifier::empty(3));
    }

    #[test]
    fn empty_data_rejected() {
        assert!(train_erm_intervals(&[], &GridClassSpec::preset()).is_err());
    }
}

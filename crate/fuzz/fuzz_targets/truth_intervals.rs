#![no_main]
use libfuzzer_sys::fuzz_target;
use wagbound::lab::{parse_truth_intervals, SyntheticTaskSpec};

fuzz_target!(|data: &str| {
    if let Ok(intervals) = parse_truth_intervals(data) {
        for w in intervals.windows(2) {
            assert!(w[0].1 < w[1].0);
        }
        SyntheticTaskSpec::new(intervals, 0.1, 1, 1, 0).expect("parsed intervals are valid");
    }
});

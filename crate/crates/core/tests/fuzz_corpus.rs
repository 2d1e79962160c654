//! Replays the checked-in fuzz seeds through the parsers on stable.

use std::fs;
use std::path::PathBuf;

use wagbound::format::{parse_sweep_csv, parse_trial_csv};
use wagbound::lab::parse_truth_intervals;
use wagbound::sweep::parse_a_list;

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            let text = fs::read_to_string(&path).unwrap();
            (path, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn csv_seeds_parse() {
    for (path, text) in seeds("sweep_csv") {
        let rows = parse_sweep_csv(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(!rows.is_empty());
    }
    for (path, text) in seeds("trial_csv") {
        let rows = parse_trial_csv(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(!rows.is_empty());
    }
}

#[test]
fn text_seeds_parse() {
    for (path, text) in seeds("truth_intervals") {
        parse_truth_intervals(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
    for (_, text) in seeds("cli_args") {
        let args = std::iter::once("wagbound").chain(text.split_whitespace());
        wagbound::cli::parse_args(args).unwrap();
    }
    assert_eq!(parse_a_list(&fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/scalar_lists/a_list"),
    ).unwrap()).unwrap(), vec![3.0, 5.0, 10.0]);
}

#![no_main]
use libfuzzer_sys::fuzz_target;
use wagbound::format::{parse_trial_csv, write_trial_csv};
use wagbound::lab::MonteCarloSummary;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(records) = parse_trial_csv(text) else {
        return;
    };
    if let Ok(summary) = MonteCarloSummary::from_records(&records) {
        assert_eq!(summary.trials, records.len() as u64);
    }
    let mut buf = Vec::new();
    write_trial_csv(&mut buf, &records).unwrap();
    let again = parse_trial_csv(std::str::from_utf8(&buf).unwrap()).expect("own output parses");
    assert_eq!(records.len(), again.len());
    for (a, b) in records.iter().zip(&again) {
        assert_eq!((a.trial, a.seed, a.outcome.method, a.outcome.holds), (b.trial, b.seed, b.outcome.method, b.outcome.holds));
    }
});

#![no_main]
use libfuzzer_sys::fuzz_target;
use wagbound::bounds::BackendKind;
use wagbound::lab::Method;
use wagbound::sweep::{parse_a_list, GridScale};

fuzz_target!(|data: &str| {
    if let Ok(list) = parse_a_list(data) {
        assert!(!list.is_empty());
        assert!(list.iter().all(|&a| a > 1.0 && a.is_finite()));
    }
    let _ = data.parse::<BackendKind>();
    let _ = data.parse::<GridScale>();
    let _ = data.parse::<Method>();
});

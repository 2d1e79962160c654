#![no_main]
use libfuzzer_sys::fuzz_target;

// Whitespace-separated tokens as argv. Only parsing is exercised; commands
// are not run.
fuzz_target!(|data: &str| {
    let args = std::iter::once("wagbound").chain(data.split_whitespace());
    let _ = wagbound::cli::parse_args(args);
});

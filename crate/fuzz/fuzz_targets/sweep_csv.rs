#![no_main]
use libfuzzer_sys::fuzz_target;
use wagbound::format::{parse_sweep_csv, write_sweep_csv};

// Anything that parses must survive a write/parse cycle with the same row
// count and integer columns.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(rows) = parse_sweep_csv(text) else {
        return;
    };
    let mut buf = Vec::new();
    write_sweep_csv(&mut buf, &rows).unwrap();
    let again = parse_sweep_csv(std::str::from_utf8(&buf).unwrap()).expect("own output parses");
    assert_eq!(rows.len(), again.len());
    for (a, b) in rows.iter().zip(&again) {
        assert_eq!(a.n, b.n);
    }
});

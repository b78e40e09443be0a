#![no_main]

use gammasr::fuzzy::{parse_fuzzy_subset, Carrier};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = parse_fuzzy_subset(text, Carrier::S) {
        let printed = f.to_string();
        assert_eq!(parse_fuzzy_subset(&printed, Carrier::S).expect("reparse"), f);
    }
});

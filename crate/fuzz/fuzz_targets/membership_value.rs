#![no_main]

use gammasr::fuzzy::MembershipValue;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = text.parse::<MembershipValue>() {
        assert!(v >= MembershipValue::ZERO && v <= MembershipValue::ONE);
        assert_eq!(v.to_string().parse::<MembershipValue>().expect("reparse"), v);
    }
});

#![no_main]

use gammasr::algebra::{parse_gamma_semiring, validate_gamma_semiring};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(g) = parse_gamma_semiring(text) else {
        return;
    };
    let printed = g.to_string();
    let again = parse_gamma_semiring(&printed).expect("printed structures parse");
    assert_eq!(again, g);
    assert_eq!(again.to_string(), printed);
    if g.s_size() <= 6 && g.g_size() <= 4 {
        let report = validate_gamma_semiring(&g);
        for v in &report.violations {
            assert!(!v.axiom.holds(&g, &v.witness));
        }
    }
});

#![no_main]

use gammasr::correspondence::TransferMap;
use gammasr::enumeration::Family;
use gammasr::fuzzy::{Carrier, IdealKind};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(kind) = text.parse::<IdealKind>() {
        assert_eq!(kind.as_str().parse::<IdealKind>(), Ok(kind));
    }
    if let Ok(carrier) = text.parse::<Carrier>() {
        assert_eq!(carrier.to_string().parse::<Carrier>(), Ok(carrier));
    }
    if let Ok(map) = text.parse::<TransferMap>() {
        assert_eq!(map.as_str().parse::<TransferMap>(), Ok(map));
    }
    if let Ok(family) = text.parse::<Family>() {
        assert_eq!(family.to_string().parse::<Family>(), Ok(family));
    }
});

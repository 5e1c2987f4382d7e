#![no_main]

use libfuzzer_sys::fuzz_target;
use nssd::catalog::parse_catalog;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sets) = parse_catalog(text) {
        for set in sets {
            assert!(!set.elements.is_empty());
            assert!(set.n >= 2);
        }
    }
});

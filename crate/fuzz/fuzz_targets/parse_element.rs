#![no_main]

use libfuzzer_sys::fuzz_target;
use nssd::{format_element, parse_element, GroupCtx};

// First byte picks n, the rest is the element text.
fuzz_target!(|data: &[u8]| {
    let Some((&n, text)) = data.split_first() else { return };
    let Ok(group) = GroupCtx::new(u32::from(n).max(2)) else { return };
    let Ok(text) = std::str::from_utf8(text) else { return };
    if let Ok(x) = parse_element(text, group) {
        assert!(group.contains(x));
        assert_eq!(parse_element(&format_element(x), group).unwrap(), x);
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use nssd::dihedral::{format_subset, parse_subset};
use nssd::GroupCtx;

fuzz_target!(|data: &[u8]| {
    let Some((&n, text)) = data.split_first() else { return };
    let Ok(group) = GroupCtx::new(u32::from(n).max(2)) else { return };
    let Ok(text) = std::str::from_utf8(text) else { return };
    if let Ok(set) = parse_subset(text, group) {
        assert!(!set.is_empty());
        assert_eq!(parse_subset(&format_subset(&set), group).unwrap(), set);
    }
});

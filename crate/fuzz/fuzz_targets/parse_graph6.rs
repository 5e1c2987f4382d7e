#![no_main]

use libfuzzer_sys::fuzz_target;
use nssd::formats::{parse_graph6, to_graph6};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph6(text) {
        let again = to_graph6(&g).expect("decoded graphs re-encode");
        assert_eq!(parse_graph6(&again).unwrap(), g);
    }
});

#![no_main]

use degen4::graph6::{parse_graph6, parse_graph6_stream, to_graph6};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let _ = parse_graph6_stream(data);
    // A record that parses must survive a write/parse round trip.
    if let Ok(g) = parse_graph6(data) {
        let text = to_graph6(&g);
        let back = parse_graph6(text.as_bytes()).expect("writer output parses");
        assert_eq!(back, g);
    }
});

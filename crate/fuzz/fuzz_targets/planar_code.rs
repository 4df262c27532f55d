#![no_main]

use degen4::embed::planar_code::{parse_planar_code, to_planar_code};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(graphs) = parse_planar_code(data) {
        let bytes = to_planar_code(&graphs);
        let back = parse_planar_code(&bytes).expect("writer output parses");
        assert_eq!(back.len(), graphs.len());
        for (a, b) in graphs.iter().zip(&back) {
            assert_eq!(a.graph.edge_count(), b.graph.edge_count());
            assert_eq!(a.faces.len(), b.faces.len());
        }
    }
});

#![no_main]

use degen4::generators::named_graph;
use degen4::{verify_certificate, ExtractionCertificate};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(cert) = ExtractionCertificate::from_json(text) else { return };
    // Replaying arbitrary logs must only ever return an error, never panic.
    for name in ["icosahedron", "octahedron", "K4"] {
        let _ = verify_certificate(&named_graph(name).expect("named graph"), &cert);
    }
    let again = ExtractionCertificate::from_json(&cert.to_json()).expect("serializer output parses");
    assert_eq!(again, cert);
});

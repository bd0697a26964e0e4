#![no_main]

use libfuzzer_sys::fuzz_target;
use planepart::plane::{load_plane_slice, validate_axioms};

fuzz_target!(|data: &[u8]| {
    if let Ok(plane) = load_plane_slice(data) {
        assert!(validate_axioms(&plane).passed());
        let doc = plane.to_document();
        assert_eq!(doc.lines.len(), plane.n());
    }
});

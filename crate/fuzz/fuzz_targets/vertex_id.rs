#![no_main]

use libfuzzer_sys::fuzz_target;
use planepart::plane::VertexId;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(v) = s.parse::<VertexId>() {
            assert_eq!(v.to_string().parse::<VertexId>(), Ok(v));
        }
    }
});

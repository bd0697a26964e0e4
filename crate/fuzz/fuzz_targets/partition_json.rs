#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use planepart::galois::Field;
use planepart::metric::{is_resolving, Partition};
use planepart::plane::{build_pg2, IncidencePlane};

fn fano() -> &'static IncidencePlane {
    static PLANE: OnceLock<IncidencePlane> = OnceLock::new();
    PLANE.get_or_init(|| build_pg2(&Field::with_order(2).unwrap()))
}

fuzz_target!(|data: &[u8]| {
    let plane = fano();
    if let Ok(p) = Partition::from_json(plane, data) {
        let covered: usize = p.classes().iter().map(|c| c.len()).sum();
        assert_eq!(covered, 2 * plane.n());
        let _ = is_resolving(plane, &p);
    }
});

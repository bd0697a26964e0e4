use planepart::galois::Field;
use planepart::io::{LineDocument, PlaneDocument};
use planepart::plane::{build_pg2, load_plane, validate_axioms, IncidencePlane, PlaneError, VertexId};
use proptest::prelude::*;

fn pg(q: u64) -> IncidencePlane {
    build_pg2(&Field::with_order(q).unwrap())
}

#[test]
fn fano_lines_are_frozen() {
    let expected: Vec<Vec<u32>> = vec![
        vec![1, 3, 5],
        vec![0, 3, 4],
        vec![2, 3, 6],
        vec![0, 1, 2],
        vec![1, 4, 6],
        vec![0, 5, 6],
        vec![2, 4, 5],
    ];
    assert_eq!(pg(2).line_lists(), &expected[..]);
}

#[test]
fn order_three_first_lines_are_frozen() {
    let p = pg(3);
    assert_eq!(p.points_on(0), &[1, 4, 7, 10]);
    assert_eq!(p.points_on(4), &[0, 1, 2, 3]);
    assert_eq!(p.n(), 13);
}

#[test]
fn every_prime_power_up_to_16() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let p = pg(q);
        assert_eq!(p.n() as u64, q * q + q + 1);
        assert!(validate_axioms(&p).passed(), "q={q}");
        assert!(validate_axioms(&p.dual()).passed(), "dual q={q}");
    }
}

#[test]
fn document_round_trip_through_json() {
    let p = pg(4);
    let json = serde_json::to_string(&p.to_document()).unwrap();
    let back = load_plane(&json).unwrap();
    assert_eq!(back.line_lists(), p.line_lists());
    assert_eq!(back.q(), 4);
}

#[test]
fn declared_order_must_match() {
    let mut doc = pg(2).to_document();
    doc.q = 3;
    assert!(matches!(
        IncidencePlane::from_document(&doc),
        Err(PlaneError::OrderMismatch { declared: 3, inferred: 2 })
    ));
}

#[test]
fn non_plane_is_rejected() {
    // Seven 3-subsets that are not a Fano plane: L0 and L1 share two points.
    let lists = [[0, 1, 2], [0, 1, 3], [0, 4, 5], [1, 4, 6], [2, 3, 4], [2, 5, 6], [3, 5, 6]];
    let doc = PlaneDocument {
        q: 2,
        lines: lists
            .iter()
            .enumerate()
            .map(|(i, pts)| LineDocument {
                id: format!("L{i}"),
                points: pts.iter().map(|p| format!("P{p}")).collect(),
            })
            .collect(),
    };
    assert!(matches!(IncidencePlane::from_document(&doc), Err(PlaneError::Axiom(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn any_single_flip_is_detected(q in prop::sample::select(vec![2u64, 3, 4, 5, 7]), a in any::<u32>(), b in any::<u32>()) {
        let p = pg(q);
        let n = p.n() as u32;
        let flipped = p.with_incidence_toggled(a % n, b % n);
        prop_assert!(!validate_axioms(&flipped).passed());
    }

    #[test]
    fn join_and_meet_are_incident(q in prop::sample::select(vec![3u64, 4, 8, 9]), a in any::<u32>(), b in any::<u32>()) {
        let p = pg(q);
        let n = p.n() as u32;
        let (a, b) = (a % n, b % n);
        if a != b {
            let l = p.join(a, b).unwrap();
            prop_assert!(p.incident(a, l) && p.incident(b, l));
            let x = p.meet(a, b).unwrap();
            prop_assert!(p.incident(x, a) && p.incident(x, b));
        }
    }

    #[test]
    fn vertex_ids_round_trip(kind in any::<bool>(), index in any::<u32>()) {
        let v = if kind { VertexId::point(index) } else { VertexId::line(index) };
        prop_assert_eq!(v.to_string().parse::<VertexId>().unwrap(), v);
    }
}

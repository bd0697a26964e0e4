use planepart::analysis::{random_partition, trial_rng};
use planepart::galois::Field;
use planepart::metric::{
    bfs_distance, distance_to_set, is_resolving, representation, unseparated_pairs, Partition, VertexSet,
};
use planepart::plane::{build_pg2, IncidencePlane, VertexId};
use proptest::prelude::*;

fn pg(q: u64) -> IncidencePlane {
    build_pg2(&Field::with_order(q).unwrap())
}

fn all_vertices(n: usize) -> impl Iterator<Item = VertexId> {
    (0..2 * n).map(move |g| VertexId::from_global(g, n))
}

fn bfs_set_distance(plane: &IncidencePlane, v: VertexId, set: &VertexSet) -> u8 {
    set.iter().map(|w| bfs_distance(plane, v, w).unwrap()).min().unwrap() as u8
}

/// Splits every class of `p` by the parity of the vertex's global index.
fn refine(p: &Partition) -> Partition {
    let n = p.n();
    let assignment: Vec<u32> = p
        .assignment()
        .iter()
        .enumerate()
        .map(|(g, &c)| 2 * c + (g % 2) as u32)
        .collect();
    // Compact the labels so every class is nonempty.
    let mut labels: Vec<u32> = assignment.clone();
    labels.sort_unstable();
    labels.dedup();
    let compact: Vec<u32> = assignment.iter().map(|c| labels.binary_search(c).unwrap() as u32).collect();
    Partition::from_assignment(n, &compact).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_equals_bfs(q in prop::sample::select(vec![2u64, 3, 4, 5]), seed in any::<u64>(), t in 1usize..8) {
        let plane = pg(q);
        let p = random_partition(&plane, t, &mut trial_rng(seed, 0));
        for v in all_vertices(plane.n()) {
            for class in p.classes() {
                prop_assert_eq!(distance_to_set(&plane, v, class).unwrap(), bfs_set_distance(&plane, v, class));
            }
        }
    }

    #[test]
    fn refinement_never_adds_collisions(q in prop::sample::select(vec![2u64, 3, 4]), seed in any::<u64>(), t in 1usize..6) {
        let plane = pg(q);
        let p = random_partition(&plane, t, &mut trial_rng(seed, 1));
        let fine = refine(&p);
        let coarse_pairs = unseparated_pairs(&plane, p.classes()).unwrap();
        let fine_pairs = unseparated_pairs(&plane, fine.classes()).unwrap();
        prop_assert!(fine_pairs.iter().all(|pair| coarse_pairs.contains(pair)));
    }

    #[test]
    fn two_code_paths_agree(q in prop::sample::select(vec![2u64, 3]), seed in any::<u64>(), t in 2usize..12) {
        let plane = pg(q);
        let p = random_partition(&plane, t, &mut trial_rng(seed, 2));
        let verdict = is_resolving(&plane, &p);
        let pairs = unseparated_pairs(&plane, p.classes()).unwrap();
        prop_assert_eq!(verdict.is_resolving(), pairs.is_empty());
        prop_assert_eq!(verdict.pairs(), pairs);
    }

    #[test]
    fn representations_determine_collisions(seed in any::<u64>(), t in 2usize..10) {
        let plane = pg(3);
        let n = plane.n();
        let p = random_partition(&plane, t, &mut trial_rng(seed, 3));
        let reps: Vec<Vec<u8>> = all_vertices(n).map(|v| representation(&plane, v, &p).to_vec()).collect();
        let pairs = unseparated_pairs(&plane, p.classes()).unwrap();
        for (a, b) in pairs {
            prop_assert_eq!(&reps[a.global(n)], &reps[b.global(n)]);
        }
        let mut distinct = reps.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(distinct.len() == reps.len(), is_resolving(&plane, &p).is_resolving());
    }
}

#[test]
fn single_class_lists_every_pair() {
    let plane = pg(2);
    let v = is_resolving(&plane, &Partition::single_class(plane.n()));
    assert!(!v.is_resolving());
    assert_eq!(v.pair_count(), 91);
    assert!(is_resolving(&plane, &Partition::singletons(plane.n())).is_resolving());
}

#[test]
fn partition_json_round_trip() {
    let plane = pg(3);
    let p = random_partition(&plane, 5, &mut trial_rng(4, 4));
    let doc = p.to_document(3, None);
    let bytes = serde_json::to_vec(&doc).unwrap();
    let back = Partition::from_json(&plane, &bytes).unwrap();
    assert_eq!(back.assignment(), p.assignment());
    assert_eq!(back.names(), p.names());
    assert!(Partition::from_json(&pg(2), &bytes).is_err());
    assert!(Partition::from_json(&plane, b"{\"q\":3}").is_err());
}

//! The conflict graph: vertices outside the core that a family leaves
//! unseparated.

use serde::Serialize;

use super::Frame;
use crate::metric::{choose2, FamilyProfile, MetricError, VertexSet};
use crate::plane::{IncidencePlane, VertexId, VertexKind};

/// Disjoint union of cliques; each clique is a group of same-representation
/// vertices, sorted by id.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ConflictGraph {
    pub cliques: Vec<Vec<VertexId>>,
    /// Edges among common vertices only, before the support is added.
    pub common_edges: usize,
}

impl ConflictGraph {
    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.cliques.iter().map(Vec::len).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.cliques.iter().map(|c| choose2(c.len())).sum()
    }

    fn side(&self, kind: VertexKind) -> Vec<u32> {
        let mut out: Vec<u32> =
            self.cliques.iter().flatten().filter(|v| v.kind == kind).map(|v| v.index).collect();
        out.sort_unstable();
        out
    }

    /// Point side, sorted.
    pub fn points(&self) -> Vec<u32> {
        self.side(VertexKind::Point)
    }

    /// Line side, sorted.
    pub fn lines(&self) -> Vec<u32> {
        self.side(VertexKind::Line)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.cliques.iter().any(|c| c.contains(&v))
    }

    /// Whether some clique holds both a point and a line.
    pub fn has_mixed_clique(&self) -> bool {
        self.cliques.iter().any(|c| c.iter().any(|v| v.kind != c[0].kind))
    }
}

/// Collisions among common and support vertices with respect to `family`.
///
/// A support vertex only appears when it collides with at least one other
/// vertex, which puts it in that vertex's clique.
pub fn build_conflict_graph(
    plane: &IncidencePlane,
    frame: &Frame,
    family: &[VertexSet],
) -> Result<ConflictGraph, MetricError> {
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate().skip(i + 1) {
            if let Some(v) = a.iter().find(|&v| b.contains(v)) {
                return Err(MetricError::Overlap { vertex: v, first: i, second: j });
            }
        }
    }
    let n = plane.n();
    let profile = FamilyProfile::new(plane, family)?;
    let candidates: Vec<usize> = (0..2 * n)
        .filter(|&g| !frame.is_core(VertexId::from_global(g, n)))
        .collect();
    let mut common_edges = 0;
    let cliques: Vec<Vec<VertexId>> = profile
        .collision_groups(&candidates)
        .into_iter()
        .map(|g| {
            let c: Vec<VertexId> = g.into_iter().map(|x| VertexId::from_global(x, n)).collect();
            let commons = c.iter().filter(|&&v| frame.is_common(v)).count();
            common_edges += choose2(commons);
            c
        })
        .collect();
    Ok(ConflictGraph { cliques, common_edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{choose_frame, sample_zeta_sets};
    use crate::galois::Field;
    use crate::metric::unseparated_pairs;
    use crate::plane::build_pg2;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cliques_are_pure_and_match_unseparated_pairs() {
        let plane = build_pg2(&Field::with_order(16).unwrap());
        let frame = choose_frame(&plane, None).unwrap();
        let n = plane.n();
        for seed in 0..5 {
            let zs = sample_zeta_sets(&plane, &frame, 15, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            let mut family = vec![frame.major_point_set()];
            family.extend(zs.iter().map(|z| z.to_vertex_set(n)));
            let g = build_conflict_graph(&plane, &frame, &family).unwrap();
            assert!(!g.has_mixed_clique());
            let expected: Vec<(VertexId, VertexId)> = unseparated_pairs(&plane, &family)
                .unwrap()
                .into_iter()
                .filter(|(a, b)| !frame.is_core(*a) && !frame.is_core(*b))
                .collect();
            assert_eq!(g.edge_count(), expected.len());
            for (a, b) in expected {
                assert!(g.cliques.iter().any(|c| c.contains(&a) && c.contains(&b)));
            }
            if 8 * g.common_edges <= 16 {
                assert!(g.vertex_count() as f64 <= 16.0 / 4.0 + 4.0);
            }
        }
    }

    #[test]
    fn fully_separating_family_gives_empty_graph() {
        let plane = build_pg2(&Field::with_order(3).unwrap());
        let frame = choose_frame(&plane, None).unwrap();
        let n = plane.n();
        let mut family = Vec::new();
        for p in 0..n as u32 {
            family.push(VertexSet::from_vertices(n, [VertexId::point(p)]));
            family.push(VertexSet::from_vertices(n, [VertexId::line(p)]));
        }
        let g = build_conflict_graph(&plane, &frame, &family).unwrap();
        assert!(g.is_empty());
        assert_eq!(g.common_edges, 0);
    }

    #[test]
    fn support_joins_a_clique() {
        // With H0 alone every common point looks like the support point.
        let plane = build_pg2(&Field::with_order(3).unwrap());
        let frame = choose_frame(&plane, None).unwrap();
        let g = build_conflict_graph(&plane, &frame, &[frame.major_point_set()]).unwrap();
        let sp = VertexId::point(frame.support_point);
        assert!(g.contains(sp));
        assert_eq!(g.points().len(), 10);
        assert_eq!(g.common_edges, choose2(9) + choose2(9));
    }
}

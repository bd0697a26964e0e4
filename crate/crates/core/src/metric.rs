//! Distances to vertex sets, representations, and resolvability checks on
//! the incidence graph of a plane.
//!
//! The incidence graph is bipartite with diameter three, so the distance
//! from a vertex to a nonempty set has a closed form:
//!
//! | `v` is a point         | distance |
//! |------------------------|----------|
//! | `v` in the set         | 0        |
//! | set has a line on `v`  | 1        |
//! | set has any point      | 2        |
//! | otherwise              | 3        |
//!
//! and dually for lines. [`bfs_distance`] is an independent oracle for it.

use std::collections::VecDeque;
use std::hash::{DefaultHasher, Hash, Hasher};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::io::{ClassDocument, ConstructionMetadata, PartitionDocument};
use crate::plane::{IncidencePlane, ParseVertexError, VertexId, VertexKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("distance to an empty set is undefined")]
    EmptySet,
    #[error("set is sized for {found} vertices per side, plane has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("{vertex} belongs to both class {first} and class {second}")]
    Overlap { vertex: VertexId, first: usize, second: usize },
    #[error("{0} is not assigned to any class")]
    Uncovered(VertexId),
    #[error("class {0} is empty")]
    EmptyClass(usize),
    #[error("{names} class names for {classes} classes")]
    NameCount { names: usize, classes: usize },
    #[error("partition is for q = {found}, plane has q = {expected}")]
    OrderMismatch { expected: u32, found: u32 },
    #[error("{id} is out of range for a plane with {n} points")]
    OutOfRange { id: VertexId, n: usize },
    #[error(transparent)]
    Id(#[from] ParseVertexError),
    #[error("malformed partition document: {0}")]
    Json(String),
}

/// A set of vertices, stored as one membership mask per side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    points: FixedBitSet,
    lines: FixedBitSet,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet { points: FixedBitSet::with_capacity(n), lines: FixedBitSet::with_capacity(n) }
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let mut s = Self::new(n);
        vertices.into_iter().for_each(|v| {
            s.insert(v);
        });
        s
    }

    pub fn from_masks(points: FixedBitSet, lines: FixedBitSet) -> Self {
        assert_eq!(points.len(), lines.len(), "masks must have equal length");
        VertexSet { points, lines }
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Returns true if `v` was newly added.
    pub fn insert(&mut self, v: VertexId) -> bool {
        let mask = self.mask_mut(v.kind);
        let fresh = !mask.contains(v.index as usize);
        mask.insert(v.index as usize);
        fresh
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.mask(v.kind).contains(v.index as usize)
    }

    pub fn mask(&self, kind: VertexKind) -> &FixedBitSet {
        match kind {
            VertexKind::Point => &self.points,
            VertexKind::Line => &self.lines,
        }
    }

    fn mask_mut(&mut self, kind: VertexKind) -> &mut FixedBitSet {
        match kind {
            VertexKind::Point => &mut self.points,
            VertexKind::Line => &mut self.lines,
        }
    }

    pub fn point_count(&self) -> usize {
        self.points.count_ones(..)
    }

    pub fn line_count(&self) -> usize {
        self.lines.count_ones(..)
    }

    pub fn len(&self) -> usize {
        self.point_count() + self.line_count()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_clear() && self.lines.is_clear()
    }

    pub fn points(&self) -> impl Iterator<Item = u32> + '_ {
        self.points.ones().map(|i| i as u32)
    }

    pub fn lines(&self) -> impl Iterator<Item = u32> + '_ {
        self.lines.ones().map(|i| i as u32)
    }

    /// Members in global order: points ascending, then lines ascending.
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.points().map(VertexId::point).chain(self.lines().map(VertexId::line))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.points.is_disjoint(&other.points) && self.lines.is_disjoint(&other.lines)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.points.union_with(&other.points);
        self.lines.union_with(&other.lines);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.points.difference_with(&other.points);
        self.lines.difference_with(&other.lines);
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.points.is_subset(&other.points) && self.lines.is_subset(&other.lines)
    }
}

/// An ordered partition of all `2n` vertices into nonempty classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    classes: Vec<VertexSet>,
    names: Vec<String>,
    assignment: Vec<u32>,
}

impl Partition {
    /// Classes get default names `C1`, `C2`, ...
    pub fn new(n: usize, classes: Vec<VertexSet>) -> Result<Self, MetricError> {
        let names = (1..=classes.len()).map(|i| format!("C{i}")).collect();
        Self::with_names(n, classes, names)
    }

    pub fn with_names(n: usize, classes: Vec<VertexSet>, names: Vec<String>) -> Result<Self, MetricError> {
        if names.len() != classes.len() {
            return Err(MetricError::NameCount { names: names.len(), classes: classes.len() });
        }
        let mut assignment = vec![u32::MAX; 2 * n];
        for (c, class) in classes.iter().enumerate() {
            if class.n() != n {
                return Err(MetricError::SizeMismatch { expected: n, found: class.n() });
            }
            if class.is_empty() {
                return Err(MetricError::EmptyClass(c));
            }
            for v in class.iter() {
                let slot = &mut assignment[v.global(n)];
                if *slot != u32::MAX {
                    return Err(MetricError::Overlap { vertex: v, first: *slot as usize, second: c });
                }
                *slot = c as u32;
            }
        }
        if let Some(g) = assignment.iter().position(|&c| c == u32::MAX) {
            return Err(MetricError::Uncovered(VertexId::from_global(g, n)));
        }
        Ok(Partition { n, classes, names, assignment })
    }

    /// Builds a partition from a class index per global vertex index.
    pub fn from_assignment(n: usize, assignment: &[u32]) -> Result<Self, MetricError> {
        if assignment.len() != 2 * n {
            return Err(MetricError::SizeMismatch { expected: 2 * n, found: assignment.len() });
        }
        let m = assignment.iter().max().map_or(0, |&c| c as usize + 1);
        let mut classes = vec![VertexSet::new(n); m];
        for (g, &c) in assignment.iter().enumerate() {
            classes[c as usize].insert(VertexId::from_global(g, n));
        }
        Self::new(n, classes)
    }

    /// Every vertex in its own class.
    pub fn singletons(n: usize) -> Self {
        let assignment: Vec<u32> = (0..2 * n as u32).collect();
        Self::from_assignment(n, &assignment).expect("singletons always form a partition")
    }

    pub fn single_class(n: usize) -> Self {
        Self::from_assignment(n, &vec![0; 2 * n]).expect("one class always forms a partition")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &VertexSet {
        &self.classes[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn class_of(&self, v: VertexId) -> usize {
        self.assignment[v.global(self.n)] as usize
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn to_document(&self, q: u32, metadata: Option<ConstructionMetadata>) -> PartitionDocument {
        PartitionDocument {
            q,
            classes: self
                .classes
                .iter()
                .zip(&self.names)
                .map(|(c, name)| ClassDocument {
                    name: name.clone(),
                    members: c.iter().map(|v| v.to_string()).collect(),
                })
                .collect(),
            metadata,
        }
    }

    pub fn from_document(plane: &IncidencePlane, doc: &PartitionDocument) -> Result<Self, MetricError> {
        if doc.q != plane.q() {
            return Err(MetricError::OrderMismatch { expected: plane.q(), found: doc.q });
        }
        let n = plane.n();
        let mut classes = Vec::with_capacity(doc.classes.len());
        let mut owner = vec![u32::MAX; 2 * n];
        for (c, class) in doc.classes.iter().enumerate() {
            let mut set = VertexSet::new(n);
            for m in &class.members {
                let v: VertexId = m.parse()?;
                if v.index as usize >= n {
                    return Err(MetricError::OutOfRange { id: v, n });
                }
                let slot = &mut owner[v.global(n)];
                if *slot != u32::MAX {
                    return Err(MetricError::Overlap { vertex: v, first: *slot as usize, second: c });
                }
                *slot = c as u32;
                set.insert(v);
            }
            classes.push(set);
        }
        Self::with_names(n, classes, doc.classes.iter().map(|c| c.name.clone()).collect())
    }

    /// Parses a partition document and checks it against `plane`.
    pub fn from_json(plane: &IncidencePlane, bytes: &[u8]) -> Result<Self, MetricError> {
        let doc: PartitionDocument = serde_json::from_slice(bytes).map_err(|e| MetricError::Json(e.to_string()))?;
        Self::from_document(plane, &doc)
    }
}

/// Distances to a list of sets, packed two bits per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Representation {
    len: usize,
    words: Vec<u64>,
}

impl Representation {
    pub fn from_coords(coords: &[u8]) -> Self {
        let mut words = vec![0u64; coords.len().div_ceil(32)];
        for (j, &d) in coords.iter().enumerate() {
            debug_assert!(d <= 3);
            words[j / 32] |= (d as u64 & 3) << (2 * (j % 32));
        }
        Representation { len: coords.len(), words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn coord(&self, j: usize) -> u8 {
        assert!(j < self.len);
        ((self.words[j / 32] >> (2 * (j % 32))) & 3) as u8
    }

    pub fn to_vec(&self) -> Vec<u8> {
        (0..self.len).map(|j| self.coord(j)).collect()
    }
}

#[derive(Debug, Clone)]
struct SetProfile {
    members: VertexSet,
    /// Points on some line of the set, and lines through some point of it.
    near: VertexSet,
    has_points: bool,
    has_lines: bool,
}

/// Precomputed neighbourhoods of a family of sets, giving O(1) distance
/// lookups per (vertex, set).
#[derive(Debug, Clone)]
pub struct FamilyProfile {
    n: usize,
    sets: Vec<SetProfile>,
}

impl FamilyProfile {
    pub fn new(plane: &IncidencePlane, family: &[VertexSet]) -> Result<Self, MetricError> {
        let n = plane.n();
        let mut sets = Vec::with_capacity(family.len());
        for s in family {
            if s.n() != n {
                return Err(MetricError::SizeMismatch { expected: n, found: s.n() });
            }
            if s.is_empty() {
                return Err(MetricError::EmptySet);
            }
            let mut near = VertexSet::new(n);
            for l in s.lines() {
                near.points.union_with(plane.line_row(l));
            }
            for p in s.points() {
                near.lines.union_with(plane.point_row(p));
            }
            sets.push(SetProfile {
                has_points: !s.points.is_clear(),
                has_lines: !s.lines.is_clear(),
                members: s.clone(),
                near,
            });
        }
        Ok(FamilyProfile { n, sets })
    }

    pub fn for_partition(plane: &IncidencePlane, partition: &Partition) -> Self {
        Self::new(plane, partition.classes()).expect("partition classes are nonempty and sized to the plane")
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    #[inline]
    pub fn distance(&self, set: usize, v: VertexId) -> u8 {
        let s = &self.sets[set];
        if s.members.contains(v) {
            0
        } else if s.near.contains(v) {
            1
        } else if match v.kind {
            VertexKind::Point => s.has_points,
            VertexKind::Line => s.has_lines,
        } {
            2
        } else {
            3
        }
    }

    pub fn representation(&self, v: VertexId) -> Representation {
        let coords: Vec<u8> = (0..self.sets.len()).map(|j| self.distance(j, v)).collect();
        Representation::from_coords(&coords)
    }

    fn hash_of(&self, v: VertexId) -> u64 {
        let mut h = DefaultHasher::new();
        self.representation(v).hash(&mut h);
        h.finish()
    }

    /// Groups of two or more vertices (global indices) among `vertices` that
    /// share a representation. Groups and their members are sorted.
    ///
    /// Vertices are bucketed by a hash of their representation; only the
    /// vertices in shared buckets have their representations compared.
    pub fn collision_groups(&self, vertices: &[usize]) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut keyed: Vec<(u64, usize)> = vertices
            .par_iter()
            .map(|&g| (self.hash_of(VertexId::from_global(g, n)), g))
            .collect();
        keyed.par_sort_unstable();
        let mut groups = Vec::new();
        for bucket in keyed.chunk_by(|a, b| a.0 == b.0) {
            if bucket.len() < 2 {
                continue;
            }
            let mut exact: Vec<(Representation, usize)> = bucket
                .iter()
                .map(|&(_, g)| (self.representation(VertexId::from_global(g, n)), g))
                .collect();
            exact.sort_unstable();
            for run in exact.chunk_by(|a, b| a.0 == b.0) {
                if run.len() > 1 {
                    groups.push(run.iter().map(|&(_, g)| g).collect::<Vec<_>>());
                }
            }
        }
        groups.sort_unstable();
        groups
    }

    pub fn all_collision_groups(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..2 * self.n).collect();
        self.collision_groups(&all)
    }
}

/// Closed-form distance from `v` to the nonempty set `set`.
pub fn distance_to_set(plane: &IncidencePlane, v: VertexId, set: &VertexSet) -> Result<u8, MetricError> {
    if set.n() != plane.n() {
        return Err(MetricError::SizeMismatch { expected: plane.n(), found: set.n() });
    }
    if set.is_empty() {
        return Err(MetricError::EmptySet);
    }
    if set.contains(v) {
        return Ok(0);
    }
    let (row, opposite, same) = match v.kind {
        VertexKind::Point => (plane.point_row(v.index), &set.lines, &set.points),
        VertexKind::Line => (plane.line_row(v.index), &set.points, &set.lines),
    };
    Ok(if !row.is_disjoint(opposite) {
        1
    } else if !same.is_clear() {
        2
    } else {
        3
    })
}

/// `r(v | partition)`: one distance per class, in class order.
pub fn representation(plane: &IncidencePlane, v: VertexId, partition: &Partition) -> Representation {
    let coords: Vec<u8> = partition
        .classes()
        .iter()
        .map(|c| distance_to_set(plane, v, c).expect("partition classes are nonempty"))
        .collect();
    Representation::from_coords(&coords)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollisionGroup {
    pub representation: Vec<u8>,
    pub members: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "collisions", rename_all = "snake_case")]
pub enum Verdict {
    Resolving,
    NotResolving(Vec<CollisionGroup>),
}

impl Verdict {
    pub fn is_resolving(&self) -> bool {
        matches!(self, Verdict::Resolving)
    }

    pub fn groups(&self) -> &[CollisionGroup] {
        match self {
            Verdict::Resolving => &[],
            Verdict::NotResolving(g) => g,
        }
    }

    /// Every colliding unordered pair, in lexicographic order.
    pub fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<(VertexId, VertexId)> = self
            .groups()
            .iter()
            .flat_map(|g| expand_pairs(&g.members))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn pair_count(&self) -> usize {
        self.groups().iter().map(|g| choose2(g.members.len())).sum()
    }
}

pub(crate) fn choose2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

fn expand_pairs(members: &[VertexId]) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::with_capacity(choose2(members.len()));
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            out.push((a, b));
        }
    }
    out
}

pub fn is_resolving(plane: &IncidencePlane, partition: &Partition) -> Verdict {
    let profile = FamilyProfile::for_partition(plane, partition);
    let n = plane.n();
    let groups: Vec<CollisionGroup> = profile
        .all_collision_groups()
        .into_iter()
        .map(|g| {
            let members: Vec<VertexId> = g.into_iter().map(|x| VertexId::from_global(x, n)).collect();
            CollisionGroup { representation: profile.representation(members[0]).to_vec(), members }
        })
        .collect();
    if groups.is_empty() {
        Verdict::Resolving
    } else {
        Verdict::NotResolving(groups)
    }
}

fn check_disjoint(family: &[VertexSet]) -> Result<(), MetricError> {
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate().skip(i + 1) {
            if !a.is_disjoint(b) {
                let mut both = a.clone();
                both.points.intersect_with(&b.points);
                both.lines.intersect_with(&b.lines);
                let vertex = both.iter().next().expect("sets intersect");
                return Err(MetricError::Overlap { vertex, first: i, second: j });
            }
        }
    }
    Ok(())
}

/// Collision groups of all vertices with respect to a disjoint family that
/// need not cover the vertex set.
pub fn unseparated_groups(plane: &IncidencePlane, family: &[VertexSet]) -> Result<Vec<Vec<VertexId>>, MetricError> {
    check_disjoint(family)?;
    let profile = FamilyProfile::new(plane, family)?;
    let n = plane.n();
    Ok(profile
        .all_collision_groups()
        .into_iter()
        .map(|g| g.into_iter().map(|x| VertexId::from_global(x, n)).collect())
        .collect())
}

/// All unordered pairs with identical distances to every set of `family`,
/// sorted lexicographically.
pub fn unseparated_pairs(
    plane: &IncidencePlane,
    family: &[VertexSet],
) -> Result<Vec<(VertexId, VertexId)>, MetricError> {
    let mut out: Vec<(VertexId, VertexId)> =
        unseparated_groups(plane, family)?.iter().flat_map(|g| expand_pairs(g)).collect();
    out.sort_unstable();
    Ok(out)
}

/// Breadth-first distances from `source` to every vertex (global order);
/// `None` marks unreachable vertices.
pub fn bfs_from(plane: &IncidencePlane, source: VertexId) -> Vec<Option<u32>> {
    let n = plane.n();
    let mut dist = vec![None; 2 * n];
    let mut queue = VecDeque::new();
    dist[source.global(n)] = Some(0);
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let d = dist[v.global(n)].unwrap();
        let kind = v.kind.opposite();
        for &w in plane.neighbors(v) {
            let w = VertexId { kind, index: w };
            let slot = &mut dist[w.global(n)];
            if slot.is_none() {
                *slot = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Shortest-path distance in the incidence graph.
pub fn bfs_distance(plane: &IncidencePlane, u: VertexId, w: VertexId) -> Option<u32> {
    bfs_from(plane, u)[w.global(plane.n())]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Field;
    use crate::plane::build_pg2;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pg(q: u64) -> IncidencePlane {
        build_pg2(&Field::with_order(q).unwrap())
    }

    fn random_partition(n: usize, m: u32, rng: &mut ChaCha8Rng) -> Partition {
        loop {
            let a: Vec<u32> = (0..2 * n).map(|_| rng.random_range(0..m)).collect();
            if let Ok(p) = Partition::from_assignment(n, &a) {
                return p;
            }
        }
    }

    #[test]
    fn closed_form_cases() {
        let p = pg(3);
        let n = p.n();
        let line0: Vec<u32> = p.points_on(0).to_vec();
        let points_class = VertexSet::from_vertices(n, line0.iter().map(|&i| VertexId::point(i)));
        assert_eq!(distance_to_set(&p, VertexId::point(line0[0]), &points_class), Ok(0));
        let outside = (0..n as u32).find(|i| !line0.contains(i)).unwrap();
        assert_eq!(distance_to_set(&p, VertexId::point(outside), &points_class), Ok(2));

        // A pure line class with no line through the point.
        let pt = 0;
        let far_line = (0..n as u32).find(|&l| !p.incident(pt, l)).unwrap();
        let lines_class = VertexSet::from_vertices(n, [VertexId::line(far_line)]);
        assert_eq!(distance_to_set(&p, VertexId::point(pt), &lines_class), Ok(3));

        // Mixed set not containing the line, with a point on it.
        let l = 5;
        let on = p.points_on(l)[0];
        let off_line = (0..n as u32).find(|&x| x != l).unwrap();
        let mixed = VertexSet::from_vertices(n, [VertexId::point(on), VertexId::line(off_line)]);
        assert_eq!(distance_to_set(&p, VertexId::line(l), &mixed), Ok(1));

        assert_eq!(distance_to_set(&p, VertexId::line(l), &VertexSet::new(n)), Err(MetricError::EmptySet));
    }

    #[test]
    fn closed_form_matches_bfs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2u64, 3, 4] {
            let p = pg(q);
            let n = p.n();
            let all: Vec<Vec<Option<u32>>> =
                (0..2 * n).map(|g| bfs_from(&p, VertexId::from_global(g, n))).collect();
            for _ in 0..20 {
                let m = rng.random_range(1..=8);
                let part = random_partition(n, m, &mut rng);
                for g in 0..2 * n {
                    let v = VertexId::from_global(g, n);
                    for c in part.classes() {
                        let oracle = c.iter().map(|s| all[g][s.global(n)].unwrap()).min().unwrap();
                        assert_eq!(distance_to_set(&p, v, c).unwrap() as u32, oracle);
                    }
                }
            }
        }
    }

    #[test]
    fn bfs_basics_and_diameter() {
        for q in [2u64, 3, 4, 5] {
            let p = pg(q);
            let n = p.n();
            let mut diameter = 0;
            for g in 0..2 * n {
                let d = bfs_from(&p, VertexId::from_global(g, n));
                diameter = diameter.max(d.iter().map(|x| x.unwrap()).max().unwrap());
            }
            assert_eq!(diameter, 3);
            let l = p.lines_through(0)[0];
            let off = (0..n as u32).find(|&x| !p.incident(0, x)).unwrap();
            assert_eq!(bfs_distance(&p, VertexId::point(0), VertexId::line(l)), Some(1));
            assert_eq!(bfs_distance(&p, VertexId::point(0), VertexId::point(1)), Some(2));
            assert_eq!(bfs_distance(&p, VertexId::point(0), VertexId::line(off)), Some(3));
        }
    }

    #[test]
    fn singleton_and_single_class_partitions() {
        let p = pg(2);
        let n = p.n();
        let s = Partition::singletons(n);
        assert_eq!(s.class_count(), 14);
        for g in 0..2 * n {
            let r = representation(&p, VertexId::from_global(g, n), &s).to_vec();
            assert_eq!(r.iter().filter(|&&d| d == 0).count(), 1);
            assert_eq!(r[s.class_of(VertexId::from_global(g, n))], 0);
        }
        assert!(is_resolving(&p, &s).is_resolving());

        let one = Partition::single_class(n);
        let v = is_resolving(&p, &one);
        assert!(!v.is_resolving());
        // Every vector is (0), so points and lines all fall into one group.
        assert_eq!(v.groups().len(), 1);
        assert_eq!(v.groups()[0].representation, vec![0]);
        assert_eq!(v.pair_count(), 91);
        assert_eq!(v.pairs().len(), 91);
    }

    #[test]
    fn unseparated_pairs_edges() {
        let p = pg(2);
        let n = p.n();
        assert_eq!(unseparated_pairs(&p, &[]).unwrap().len(), 14 * 13 / 2);
        let singles = Partition::singletons(n);
        assert!(unseparated_pairs(&p, singles.classes()).unwrap().is_empty());
        let a = VertexSet::from_vertices(n, [VertexId::point(0), VertexId::line(1)]);
        let b = VertexSet::from_vertices(n, [VertexId::line(1)]);
        assert!(matches!(unseparated_pairs(&p, &[a, b]), Err(MetricError::Overlap { .. })));
    }

    #[test]
    fn major_points_class_on_pg4() {
        // H0 = the points of line 0 other than its lowest point.
        let p = pg(4);
        let n = p.n();
        let support = p.points_on(0)[0];
        let h0 = VertexSet::from_vertices(
            n,
            p.points_on(0).iter().filter(|&&x| x != support).map(|&x| VertexId::point(x)),
        );
        let pairs = unseparated_pairs(&p, std::slice::from_ref(&h0)).unwrap();
        // Brute force: pairs with equal distance, computed via BFS.
        let mut oracle = Vec::new();
        let dists: Vec<u32> = (0..2 * n)
            .map(|g| {
                let d = bfs_from(&p, VertexId::from_global(g, n));
                h0.iter().map(|s| d[s.global(n)].unwrap()).min().unwrap()
            })
            .collect();
        for a in 0..2 * n {
            for b in a + 1..2 * n {
                if dists[a] == dists[b] {
                    oracle.push((VertexId::from_global(a, n), VertexId::from_global(b, n)));
                }
            }
        }
        assert_eq!(pairs, oracle);
        assert!(pairs.iter().all(|(a, b)| a.kind == b.kind));
        for x in h0.points() {
            for y in h0.points().filter(|&y| y > x) {
                assert!(pairs.contains(&(VertexId::point(x), VertexId::point(y))));
            }
        }
    }

    #[test]
    fn partition_validation_errors() {
        let n = 7;
        let a = VertexSet::from_vertices(n, (0..7).map(VertexId::point));
        let b = VertexSet::from_vertices(n, (0..6).map(VertexId::line));
        assert_eq!(
            Partition::new(n, vec![a.clone(), b.clone()]).unwrap_err(),
            MetricError::Uncovered(VertexId::line(6))
        );
        let c = VertexSet::from_vertices(n, [VertexId::line(6), VertexId::point(0)]);
        assert!(matches!(Partition::new(n, vec![a.clone(), b.clone(), c]), Err(MetricError::Overlap { .. })));
        let full = VertexSet::from_vertices(n, (0..7).map(VertexId::line));
        assert_eq!(Partition::new(n, vec![a, full, VertexSet::new(n)]).unwrap_err(), MetricError::EmptyClass(2));
    }

    #[test]
    fn document_round_trip_and_errors() {
        let p = pg(2);
        let part = Partition::singletons(p.n());
        let doc = part.to_document(2, None);
        let json = serde_json::to_vec(&doc).unwrap();
        assert_eq!(Partition::from_json(&p, &json).unwrap(), part);
        assert!(matches!(Partition::from_json(&p, b"[]"), Err(MetricError::Json(_))));
        let mut bad = doc.clone();
        bad.q = 3;
        assert!(matches!(Partition::from_document(&p, &bad), Err(MetricError::OrderMismatch { .. })));
        let mut bad = doc.clone();
        bad.classes[0].members.push("L9".into());
        assert!(matches!(Partition::from_document(&p, &bad), Err(MetricError::OutOfRange { .. })));
        let mut bad = doc;
        bad.classes[0].members.push("L0".into());
        assert!(matches!(Partition::from_document(&p, &bad), Err(MetricError::Overlap { .. })));
    }

    #[test]
    fn representation_packing() {
        let coords: Vec<u8> = (0..70).map(|i| (i * 7 % 4) as u8).collect();
        let r = Representation::from_coords(&coords);
        assert_eq!(r.len(), 70);
        assert_eq!(r.to_vec(), coords);
    }
}

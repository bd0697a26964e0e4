//! Randomized construction of a resolving partition with about `4 log2 q`
//! classes.
//!
//! Classes, in order: `H0` (the major points), `k` ζ-sets, `l`
//! searching-set classes, and `Hrest` holding every vertex left over.

mod conflict;
mod h2;
mod searching;
mod zeta;

use std::fmt;

use fixedbitset::FixedBitSet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use conflict::{build_conflict_graph, ConflictGraph};
pub use h2::{build_h2, select_class_lines, select_class_points, GreedyFailure, H2Class, H2Error, Requirement};
pub use searching::{membership, searching_family, SearchingError};
pub use zeta::{expected_collision_bound, sample_zeta_sets, separation_probability_bound, ZetaSet};

use crate::io::{ClassRole, ConstructionMetadata};
use crate::metric::{is_resolving, MetricError, Partition, VertexSet};
use crate::plane::{IncidencePlane, VertexId, VertexKind};

/// The support pair and the labels it induces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Frame {
    pub support_point: u32,
    pub support_line: u32,
    /// Points of the support line other than the support point, ascending.
    pub major_points: Vec<u32>,
    /// Lines through the support point other than the support line, ascending.
    pub major_lines: Vec<u32>,
    #[serde(skip)]
    point_mask: FixedBitSet,
    #[serde(skip)]
    line_mask: FixedBitSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    SupportPoint,
    SupportLine,
    MajorPoint,
    MajorLine,
    Common,
}

impl Frame {
    fn new(plane: &IncidencePlane, support_point: u32, support_line: u32) -> Self {
        let n = plane.n();
        let major_points: Vec<u32> =
            plane.points_on(support_line).iter().copied().filter(|&p| p != support_point).collect();
        let major_lines: Vec<u32> =
            plane.lines_through(support_point).iter().copied().filter(|&l| l != support_line).collect();
        let mut point_mask = FixedBitSet::with_capacity(n);
        let mut line_mask = FixedBitSet::with_capacity(n);
        major_points.iter().for_each(|&p| point_mask.insert(p as usize));
        major_lines.iter().for_each(|&l| line_mask.insert(l as usize));
        Frame { support_point, support_line, major_points, major_lines, point_mask, line_mask }
    }

    pub fn role(&self, v: VertexId) -> Role {
        match v.kind {
            VertexKind::Point if v.index == self.support_point => Role::SupportPoint,
            VertexKind::Line if v.index == self.support_line => Role::SupportLine,
            VertexKind::Point if self.point_mask.contains(v.index as usize) => Role::MajorPoint,
            VertexKind::Line if self.line_mask.contains(v.index as usize) => Role::MajorLine,
            _ => Role::Common,
        }
    }

    pub fn is_core(&self, v: VertexId) -> bool {
        matches!(self.role(v), Role::MajorPoint | Role::MajorLine)
    }

    pub fn is_common(&self, v: VertexId) -> bool {
        self.role(v) == Role::Common
    }

    /// `H0`.
    pub fn major_point_set(&self) -> VertexSet {
        VertexSet::from_masks(self.point_mask.clone(), FixedBitSet::with_capacity(self.line_mask.len()))
    }

    /// The same frame read in the dual plane.
    pub fn dual(&self) -> Frame {
        Frame {
            support_point: self.support_line,
            support_line: self.support_point,
            major_points: self.major_lines.clone(),
            major_lines: self.major_points.clone(),
            point_mask: self.line_mask.clone(),
            line_mask: self.point_mask.clone(),
        }
    }
}

/// The lowest point with the lowest line through it, or the given pair.
pub fn choose_frame(plane: &IncidencePlane, support: Option<(u32, u32)>) -> Result<Frame, ConstructError> {
    let n = plane.n();
    let (p, l) = match support {
        Some((p, l)) => {
            for id in [VertexId::point(p), VertexId::line(l)] {
                if id.index as usize >= n {
                    return Err(ConstructError::OutOfRange { id, n });
                }
            }
            if !plane.incident(p, l) {
                return Err(ConstructError::NotIncident { point: p, line: l });
            }
            (p, l)
        }
        None => (0, *plane.lines_through(0).first().ok_or(ConstructError::EmptyPlane)?),
    };
    Ok(Frame::new(plane, p, l))
}

/// Smallest `m` with `2^m >= x`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        u64::BITS - (x - 1).leading_zeros()
    }
}

/// `⌈3 log2 q⌉ + 3`.
pub fn default_k(q: u32) -> usize {
    ceil_log2((q as u64).pow(3)) as usize + 3
}

/// `⌈log2 q⌉`.
pub fn default_l(q: u32) -> usize {
    ceil_log2(q as u64) as usize
}

/// `4 ⌈log2 q⌉ + 5`.
pub fn class_count_bound(q: u32) -> usize {
    4 * default_l(q) + 5
}

/// `3q/8 - log2 q - 2`, the guaranteed number of free lines per step.
pub fn free_line_margin(q: u32) -> f64 {
    3.0 * q as f64 / 8.0 - (q as f64).log2() - 2.0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructConfig {
    pub seed: u64,
    /// Attempts after the first; attempt `i` uses seed `seed + i`.
    pub max_retries: u32,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub support: Option<(u32, u32)>,
    /// Attempts run in parallel batches of this size. The result does not
    /// depend on it.
    pub workers: usize,
}

impl Default for ConstructConfig {
    fn default() -> Self {
        ConstructConfig { seed: 0, max_retries: 20, k: None, l: None, support: None, workers: 1 }
    }
}

/// Why an attempt was abandoned.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    #[error("{edges} unseparated common pairs after the ζ-sets exceed q/8 = {}", *q as f64 / 8.0)]
    EdgeBudget { edges: usize, q: u32 },
    #[error(transparent)]
    H2(#[from] H2Error),
    #[error("no vertices left for Hrest")]
    EmptyRest,
    #[error("final partition leaves {pairs} pairs unseparated")]
    NotResolving { pairs: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttemptFailure {
    pub attempt: u32,
    pub seed: u64,
    pub obstruction: Obstruction,
}

impl fmt::Display for AttemptFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "attempt {} (seed {}): {}", self.attempt, self.seed, self.obstruction)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    #[error("order too small for construction: k = {k} > q = {q}")]
    OrderTooSmall { q: u32, k: usize },
    #[error("P{point} is not on L{line}")]
    NotIncident { point: u32, line: u32 },
    #[error("{id} is out of range for a plane with {n} points")]
    OutOfRange { id: VertexId, n: usize },
    #[error("plane has no incidences")]
    EmptyPlane,
    #[error("{attempts} attempts failed; last: {last}")]
    RetriesExhausted { attempts: u32, last: Box<AttemptFailure>, failures: Vec<AttemptFailure> },
    #[error(transparent)]
    Metric(#[from] MetricError),
}

#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub partition: Partition,
    pub metadata: ConstructionMetadata,
    pub frame: Frame,
    pub zeta_sets: Vec<ZetaSet>,
    pub conflict: ConflictGraph,
    pub h2: Vec<H2Class>,
    /// Failed attempts before the winning one, in order.
    pub failures: Vec<AttemptFailure>,
}

struct Draft {
    partition: Partition,
    zeta_sets: Vec<ZetaSet>,
    conflict: ConflictGraph,
    h2: Vec<H2Class>,
}

fn attempt(plane: &IncidencePlane, frame: &Frame, k: usize, l: usize, seed: u64) -> Result<Result<Draft, Obstruction>, ConstructError> {
    let n = plane.n();
    let q = plane.q();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zeta_sets = sample_zeta_sets(plane, frame, k, &mut rng)?;
    let mut family = Vec::with_capacity(k + 1);
    family.push(frame.major_point_set());
    family.extend(zeta_sets.iter().map(|z| z.to_vertex_set(n)));
    let conflict = build_conflict_graph(plane, frame, &family)?;
    log::debug!(
        "seed {seed}: conflict graph has {} vertices, {} common edges",
        conflict.vertex_count(),
        conflict.common_edges
    );
    if 8 * conflict.common_edges > q as usize {
        return Ok(Err(Obstruction::EdgeBudget { edges: conflict.common_edges, q }));
    }
    let mut used = VertexSet::new(n);
    family.iter().for_each(|s| used.union_with(s));
    let h2 = match build_h2(plane, frame, &conflict, l, &used, &mut rng) {
        Ok(h2) => h2,
        Err(e) => return Ok(Err(e.into())),
    };
    family.extend(h2.iter().map(|c| c.to_vertex_set(n)));
    let mut rest = VertexSet::new(n);
    for g in 0..2 * n {
        rest.insert(VertexId::from_global(g, n));
    }
    family.iter().for_each(|s| rest.difference_with(s));
    if rest.is_empty() {
        return Ok(Err(Obstruction::EmptyRest));
    }
    family.push(rest);
    let mut names = vec!["H0".to_string()];
    names.extend((1..=k).map(|i| format!("Z{i}")));
    names.extend((1..=l).map(|i| format!("S{i}")));
    names.push("Hrest".into());
    let partition = Partition::with_names(n, family, names)?;
    let verdict = is_resolving(plane, &partition);
    if !verdict.is_resolving() {
        return Ok(Err(Obstruction::NotResolving { pairs: verdict.pair_count() }));
    }
    Ok(Ok(Draft { partition, zeta_sets, conflict, h2 }))
}

/// Runs attempts `seed, seed + 1, ...` until one yields a verified resolving
/// partition. The lowest successful attempt index wins.
pub fn construct_partition(plane: &IncidencePlane, config: &ConstructConfig) -> Result<ConstructionResult, ConstructError> {
    let q = plane.q();
    let k = config.k.unwrap_or_else(|| default_k(q));
    let l = config.l.unwrap_or_else(|| default_l(q));
    if k > q as usize {
        return Err(ConstructError::OrderTooSmall { q, k });
    }
    if free_line_margin(q) <= 0.0 {
        log::warn!(
            "q = {q}: 3q/8 - log2 q - 2 <= 0, the free-line count is not guaranteed and retries may run out"
        );
    }
    let frame = choose_frame(plane, config.support)?;
    let attempts = config.max_retries.saturating_add(1);
    let workers = config.workers.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let mut failures = Vec::new();
    let mut start = 0u32;
    while start < attempts {
        let end = attempts.min(start.saturating_add(workers as u32));
        let batch: Vec<_> = pool.install(|| {
            (start..end)
                .into_par_iter()
                .map(|i| {
                    let seed = config.seed.wrapping_add(i as u64);
                    (i, seed, attempt(plane, &frame, k, l, seed))
                })
                .collect()
        });
        for (i, seed, outcome) in batch {
            match outcome? {
                Ok(draft) => {
                    log::info!("attempt {i} (seed {seed}) succeeded");
                    let mut roles = vec![ClassRole::MajorPoints];
                    roles.extend(draft.zeta_sets.iter().map(|z| ClassRole::Zeta {
                        base_point: VertexId::point(z.base_point),
                        base_line: VertexId::line(z.base_line),
                    }));
                    roles.extend((0..l).map(|_| ClassRole::Searching));
                    roles.push(ClassRole::Rest);
                    return Ok(ConstructionResult {
                        partition: draft.partition,
                        metadata: ConstructionMetadata { q, k, l, seed: config.seed, retries: i, roles },
                        frame,
                        zeta_sets: draft.zeta_sets,
                        conflict: draft.conflict,
                        h2: draft.h2,
                        failures,
                    });
                }
                Err(obstruction) => {
                    let f = AttemptFailure { attempt: i, seed, obstruction };
                    log::info!("{f}");
                    failures.push(f);
                }
            }
        }
        start = end;
    }
    let last = Box::new(failures.last().cloned().expect("at least one attempt"));
    Err(ConstructError::RetriesExhausted { attempts, last, failures })
}

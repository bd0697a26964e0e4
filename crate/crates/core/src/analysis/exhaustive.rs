//! Exact partition dimension by enumerating set partitions.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::bounds::lower_bound;
use super::AnalysisError;
use crate::io::PartitionDocument;
use crate::metric::{bfs_from, Partition};
use crate::plane::{IncidencePlane, VertexId};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Largest vertex count the bitmask search handles.
pub const MAX_VERTICES: usize = 64;

/// Set partitions of `0..len` into exactly `blocks` nonempty blocks, as
/// restricted growth strings in lexicographic order. Element 0 is always in
/// block 0.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    a: Vec<u32>,
    /// `seen[i]` = number of blocks used by `a[..i]`.
    seen: Vec<u32>,
    blocks: u32,
    fixed: usize,
    started: bool,
    done: bool,
}

impl SetPartitions {
    pub fn new(len: usize, blocks: usize) -> Self {
        Self::with_prefix(len, blocks, &[])
    }

    /// Partitions whose strings start with `prefix`.
    pub fn with_prefix(len: usize, blocks: usize, prefix: &[u32]) -> Self {
        let mut it = SetPartitions {
            a: vec![0; len],
            seen: vec![0; len + 1],
            blocks: blocks as u32,
            fixed: prefix.len(),
            started: false,
            done: false,
        };
        let valid_prefix = prefix.len() <= len
            && prefix.iter().enumerate().all(|(i, &x)| {
                let ok = x <= it.seen[i] && x < it.blocks;
                it.a[i] = x;
                it.seen[i + 1] = it.seen[i].max(x + 1);
                ok
            });
        if !valid_prefix || (len == 0) != (blocks == 0) || !it.fill_from(prefix.len()) {
            it.done = true;
        }
        it
    }

    /// Lexicographically smallest completion of `a[..from]`; false if none.
    fn fill_from(&mut self, from: usize) -> bool {
        let len = self.a.len();
        if (self.blocks as usize).saturating_sub(self.seen[from] as usize) > len - from {
            return false;
        }
        for i in from..len {
            let need = self.blocks - self.seen[i];
            let x = if need as usize == len - i { self.seen[i] } else { 0 };
            self.a[i] = x;
            self.seen[i + 1] = self.seen[i].max(x + 1);
        }
        self.seen[len] == self.blocks
    }

    fn advance(&mut self) -> bool {
        let len = self.a.len();
        for i in (self.fixed.max(1)..len).rev() {
            let x = self.a[i] + 1;
            if x > self.seen[i] || x >= self.blocks {
                continue;
            }
            let seen = self.seen[i].max(x + 1);
            if (self.blocks - seen) as usize > len - i - 1 {
                continue;
            }
            self.a[i] = x;
            self.seen[i + 1] = seen;
            if self.fill_from(i + 1) {
                return true;
            }
        }
        false
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.a.clone())
    }
}

/// Distance layers as bitmasks over global vertex indices.
struct MaskOracle {
    /// `layers[v][d]` = vertices at distance `d` from `v`.
    layers: Vec<Vec<u64>>,
}

impl MaskOracle {
    fn new(plane: &IncidencePlane) -> Self {
        let n = plane.n();
        let layers = (0..2 * n)
            .map(|g| {
                let dist = bfs_from(plane, VertexId::from_global(g, n));
                let depth = dist.iter().flatten().max().copied().unwrap_or(0) as usize;
                let mut l = vec![0u64; depth + 1];
                for (w, d) in dist.iter().enumerate() {
                    if let Some(d) = d {
                        l[*d as usize] |= 1 << w;
                    }
                }
                l
            })
            .collect();
        MaskOracle { layers }
    }

    fn resolves(&self, assignment: &[u32], blocks: usize, masks: &mut Vec<u64>, reps: &mut Vec<u128>) -> bool {
        masks.clear();
        masks.resize(blocks, 0);
        for (v, &c) in assignment.iter().enumerate() {
            masks[c as usize] |= 1 << v;
        }
        reps.clear();
        for layers in &self.layers {
            let mut rep = 0u128;
            for &m in masks.iter() {
                // Plane incidence graphs have diameter 3, so two bits suffice.
                let d = layers.iter().position(|&l| l & m != 0).unwrap_or(3) as u128;
                rep = rep << 2 | d.min(3);
            }
            reps.push(rep);
        }
        reps.sort_unstable();
        reps.windows(2).all(|w| w[0] != w[1])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub t: usize,
    /// Partitions verified at this level.
    pub verified: u64,
    pub found: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub q: u32,
    pub vertices: usize,
    /// Set when the value is proven minimal.
    pub exact: Option<usize>,
    /// Every `t` below this was refuted or ruled out by the counting bound.
    pub lower: usize,
    /// Smallest `t` with a witness, if any.
    pub upper: Option<usize>,
    pub witness: Option<PartitionDocument>,
    pub nodes_explored: u64,
    pub budget_exhausted: bool,
    pub levels: Vec<LevelReport>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Prefix length used to split one level into parallel tasks.
const SPLIT_DEPTH: usize = 7;

enum LevelOutcome {
    Witness { assignment: Vec<u32>, verified: u64 },
    Refuted { verified: u64 },
    OutOfBudget { verified: u64 },
}

fn search_level(oracle: &MaskOracle, len: usize, t: usize, budget: u64, spent: &AtomicU64) -> LevelOutcome {
    let depth = SPLIT_DEPTH.min(len);
    // Prefixes of length `depth` that admit some completion into t blocks.
    let prefixes: Vec<Vec<u32>> = (1..=t.min(depth))
        .flat_map(|b| SetPartitions::new(depth, b))
        .filter(|p| SetPartitions::with_prefix(len, t, p).next().is_some())
        .collect::<Vec<_>>();
    let mut prefixes = prefixes;
    prefixes.sort_unstable();
    let best = AtomicUsize::new(usize::MAX);
    let results: Vec<(u64, Option<Vec<u32>>, bool)> = prefixes
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let (mut masks, mut reps) = (Vec::new(), Vec::new());
            let mut verified = 0u64;
            for a in SetPartitions::with_prefix(len, t, p) {
                if best.load(Ordering::Relaxed) < i {
                    return (verified, None, false);
                }
                if spent.fetch_add(1, Ordering::Relaxed) >= budget {
                    return (verified, None, true);
                }
                verified += 1;
                if oracle.resolves(&a, t, &mut masks, &mut reps) {
                    best.fetch_min(i, Ordering::Relaxed);
                    return (verified, Some(a), false);
                }
            }
            (verified, None, false)
        })
        .collect();
    let mut verified = 0;
    for (count, witness, out_of_budget) in results {
        verified += count;
        if let Some(assignment) = witness {
            return LevelOutcome::Witness { assignment, verified };
        }
        if out_of_budget {
            return LevelOutcome::OutOfBudget { verified };
        }
    }
    LevelOutcome::Refuted { verified }
}

/// Smallest `t` in `t_min..=t_max` admitting a resolving partition, by
/// exhaustive enumeration. `budget` caps the number of partitions verified.
pub fn exhaustive_pd(
    plane: &IncidencePlane,
    t_min: usize,
    t_max: usize,
    budget: u64,
) -> Result<SearchResult, AnalysisError> {
    let start = Instant::now();
    let len = 2 * plane.n();
    if len > MAX_VERTICES {
        return Err(AnalysisError::TooLarge { vertices: len, max: MAX_VERTICES });
    }
    if t_min == 0 || t_min > t_max {
        return Err(AnalysisError::InvalidRange { t_min, t_max });
    }
    let oracle = MaskOracle::new(plane);
    let q = plane.q();
    // t = 1 never resolves two or more vertices.
    let floor = lower_bound(q).map_or(1, |b| b.total as usize).max(if len >= 2 { 2 } else { 1 });
    // Levels below t_min are ruled out only when the bound reaches t_min.
    let proven = t_min <= floor;
    let mut lower = if proven { t_min.max(floor) } else { floor };
    let spent = AtomicU64::new(0);
    let mut levels = Vec::new();
    let mut nodes = 0;
    let mut result = SearchResult {
        q,
        vertices: len,
        exact: None,
        lower,
        upper: None,
        witness: None,
        nodes_explored: 0,
        budget_exhausted: false,
        levels: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for t in t_min..=t_max.min(len) {
        match search_level(&oracle, len, t, budget, &spent) {
            LevelOutcome::Witness { assignment, verified } => {
                nodes += verified;
                levels.push(LevelReport { t, verified, found: true });
                let partition = Partition::from_assignment(plane.n(), &assignment)?;
                result.upper = Some(t);
                result.witness = Some(partition.to_document(q, None));
                if proven {
                    result.exact = Some(t);
                    lower = t;
                }
                break;
            }
            LevelOutcome::Refuted { verified } => {
                nodes += verified;
                levels.push(LevelReport { t, verified, found: false });
                if proven {
                    lower = lower.max(t + 1);
                }
            }
            LevelOutcome::OutOfBudget { verified } => {
                nodes += verified;
                levels.push(LevelReport { t, verified, found: false });
                result.budget_exhausted = true;
                break;
            }
        }
    }
    result.lower = lower;
    result.nodes_explored = nodes;
    result.levels = levels;
    result.elapsed = start.elapsed();
    Ok(result)
}

//! Random partitions improved by single-vertex moves.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::metric::{choose2, FamilyProfile, Partition};
use crate::plane::IncidencePlane;

/// Moves tried per attempt, as a multiple of the vertex count.
const STEPS_PER_VERTEX: usize = 8;

#[derive(Debug, Clone)]
pub struct RandomizedRun {
    pub witness: Option<Partition>,
    /// Attempts made, including the successful one.
    pub attempts_used: usize,
    /// Collision counts after each accepted move, one list per attempt.
    pub traces: Vec<Vec<usize>>,
}

fn collision_count(plane: &IncidencePlane, assignment: &[u32]) -> usize {
    let partition = Partition::from_assignment(plane.n(), assignment).expect("assignment keeps every class nonempty");
    let profile = FamilyProfile::for_partition(plane, &partition);
    profile.all_collision_groups().iter().map(|g| choose2(g.len())).sum()
}

/// Searches for a resolving partition into exactly `t` classes.
pub fn randomized_upper_bound(plane: &IncidencePlane, t: usize, attempts: usize, seed: u64) -> RandomizedRun {
    let n = plane.n();
    let len = 2 * n;
    let mut run = RandomizedRun { witness: None, attempts_used: 0, traces: Vec::new() };
    if t == 0 || t > len {
        return run;
    }
    if t == len {
        run.witness = Some(Partition::singletons(n));
        return run;
    }
    for a in 0..attempts {
        run.attempts_used = a + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(a as u64);
        let mut order: Vec<usize> = (0..len).collect();
        order.shuffle(&mut rng);
        let mut assignment = vec![0u32; len];
        let mut sizes = vec![0usize; t];
        for (i, &v) in order.iter().enumerate() {
            let c = if i < t { i } else { rng.random_range(0..t) };
            assignment[v] = c as u32;
            sizes[c] += 1;
        }
        let mut current = collision_count(plane, &assignment);
        let mut trace = vec![current];
        for _ in 0..STEPS_PER_VERTEX * len {
            if current == 0 {
                break;
            }
            let v = rng.random_range(0..len);
            let from = assignment[v] as usize;
            if sizes[from] == 1 {
                continue;
            }
            let mut best: Option<(usize, usize)> = None;
            for to in (0..t).filter(|&c| c != from) {
                assignment[v] = to as u32;
                let c = collision_count(plane, &assignment);
                if c <= current && best.is_none_or(|b| c < b.0) {
                    best = Some((c, to));
                }
            }
            match best {
                Some((c, to)) => {
                    assignment[v] = to as u32;
                    sizes[from] -= 1;
                    sizes[to] += 1;
                    current = c;
                    trace.push(c);
                }
                None => assignment[v] = from as u32,
            }
        }
        run.traces.push(trace);
        if current == 0 {
            let p = Partition::from_assignment(n, &assignment).expect("classes stay nonempty");
            run.witness = Some(p);
            break;
        }
    }
    run
}

#[derive(Debug, Clone, Serialize)]
pub struct DescentLevel {
    pub t: usize,
    pub found: bool,
    pub attempts_used: usize,
}

#[derive(Debug, Clone)]
pub struct Descent {
    /// Smallest `t` with a witness.
    pub smallest: Option<usize>,
    pub witness: Option<Partition>,
    pub levels: Vec<DescentLevel>,
}

/// Runs [`randomized_upper_bound`] for `t = t_start, t_start - 1, ...` and
/// stops at the first `t` without a witness or at `t_stop`.
pub fn descend_upper_bound(
    plane: &IncidencePlane,
    t_start: usize,
    t_stop: usize,
    attempts: usize,
    seed: u64,
) -> Descent {
    let mut out = Descent { smallest: None, witness: None, levels: Vec::new() };
    let mut t = t_start;
    while t >= t_stop.max(1) {
        let run = randomized_upper_bound(plane, t, attempts, seed);
        let found = run.witness.is_some();
        out.levels.push(DescentLevel { t, found, attempts_used: run.attempts_used });
        if !found {
            break;
        }
        out.smallest = Some(t);
        out.witness = run.witness;
        t -= 1;
    }
    out
}

/// Uniform random nonempty `t`-partition, for tests and sampling.
pub fn random_partition<R: Rng + ?Sized>(plane: &IncidencePlane, t: usize, rng: &mut R) -> Partition {
    let len = 2 * plane.n();
    assert!((1..=len).contains(&t), "class count {t} out of range for {len} vertices");
    let mut order: Vec<usize> = (0..len).collect();
    order.shuffle(rng);
    let mut assignment = vec![0u32; len];
    for (i, &v) in order.iter().enumerate() {
        assignment[v] = if i < t { i as u32 } else { rng.random_range(0..t as u32) };
    }
    Partition::from_assignment(plane.n(), &assignment).expect("first t shuffled vertices seed every class")
}

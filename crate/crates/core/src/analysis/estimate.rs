//! Monte Carlo count of common pairs left unseparated by random ζ-sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::AnalysisError;
use crate::construct::{choose_frame, expected_collision_bound, sample_zeta_sets, Frame};
use crate::metric::{choose2, FamilyProfile};
use crate::plane::{IncidencePlane, VertexId};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub q: u32,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub mean: f64,
    /// Sample standard error of the mean; absent for a single trial.
    pub std_error: Option<f64>,
    pub m_k: f64,
    pub counts: Vec<usize>,
}

/// The RNG for one trial: stream `trial` of `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A uniformly random incident support pair.
pub fn random_frame<R: Rng + ?Sized>(plane: &IncidencePlane, rng: &mut R) -> Frame {
    let p = rng.random_range(0..plane.n() as u32);
    let through = plane.lines_through(p);
    let l = through[rng.random_range(0..through.len())];
    choose_frame(plane, Some((p, l))).expect("the pair is incident")
}

/// Unseparated pairs among common vertices after `H0` and `k` ζ-sets, for one trial.
pub fn trial_count(plane: &IncidencePlane, k: usize, seed: u64, trial: u64) -> Result<usize, AnalysisError> {
    let n = plane.n();
    let mut rng = trial_rng(seed, trial);
    let frame = random_frame(plane, &mut rng);
    let zs = sample_zeta_sets(plane, &frame, k, &mut rng)?;
    let mut family = vec![frame.major_point_set()];
    family.extend(zs.iter().map(|z| z.to_vertex_set(n)));
    let profile = FamilyProfile::new(plane, &family).map_err(crate::construct::ConstructError::from)?;
    let commons: Vec<usize> = (0..2 * n).filter(|&g| frame.is_common(VertexId::from_global(g, n))).collect();
    Ok(profile.collision_groups(&commons).iter().map(|g| choose2(g.len())).sum())
}

pub fn estimate_unseparated(
    plane: &IncidencePlane,
    k: usize,
    trials: usize,
    seed: u64,
    workers: Option<usize>,
) -> Result<EstimateReport, AnalysisError> {
    if trials == 0 {
        return Err(AnalysisError::NoTrials);
    }
    let run = || -> Result<Vec<usize>, AnalysisError> {
        (0..trials as u64).into_par_iter().map(|i| trial_count(plane, k, seed, i)).collect()
    };
    let counts = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .expect("thread pool")
            .install(run)?,
        None => run()?,
    };
    let sum: usize = counts.iter().sum();
    let mean = sum as f64 / trials as f64;
    let std_error = (trials > 1).then(|| {
        let var = counts.iter().map(|&c| (c as f64 - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
        (var / trials as f64).sqrt()
    });
    Ok(EstimateReport {
        q: plane.q(),
        k,
        trials,
        seed,
        mean,
        std_error,
        m_k: expected_collision_bound(plane.q(), k as u32),
        counts,
    })
}

//! Lower bounds, exact search on tiny planes, randomized witnesses, and
//! Monte Carlo checks of the ζ-set step.

mod bounds;
mod estimate;
mod exhaustive;
mod randomized;

use thiserror::Error;

pub use bounds::{lower_bound, Inequality, LowerBoundResult, BOX_LIMIT};
pub use estimate::{estimate_unseparated, random_frame, trial_count, trial_rng, EstimateReport};
pub use exhaustive::{exhaustive_pd, LevelReport, SearchResult, SetPartitions, DEFAULT_BUDGET, MAX_VERTICES};
pub use randomized::{
    descend_upper_bound, random_partition, randomized_upper_bound, Descent, DescentLevel, RandomizedRun,
};

use crate::construct::ConstructError;
use crate::metric::MetricError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("q = {q} is below the minimum {min}")]
    OrderTooSmall { q: u32, min: u32 },
    #[error("no feasible class split within the search box for q = {q}")]
    BoxExhausted { q: u32 },
    #[error("{vertices} vertices exceed the exhaustive search limit of {max}")]
    TooLarge { vertices: usize, max: usize },
    #[error("invalid class range {t_min}..={t_max}")]
    InvalidRange { t_min: usize, t_max: usize },
    #[error("at least one trial is required")]
    NoTrials,
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

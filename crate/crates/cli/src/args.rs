use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "planepart", version, about = "Resolving partitions of projective plane incidence graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build PG(2, q) and emit its plane document.
    Plane {
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Construct a resolving partition.
    Construct {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Attempts after the first.
        #[arg(long, default_value_t = 20)]
        retries: u32,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Check whether a partition is resolving.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        partition: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Counting lower bound on the number of classes.
    Bounds {
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Search for the partition dimension.
    Search {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[arg(long)]
        tmin: Option<usize>,
        #[arg(long)]
        tmax: Option<usize>,
        /// Partitions verified before the exhaustive search gives up.
        #[arg(long, default_value_t = planepart::analysis::DEFAULT_BUDGET)]
        budget: u64,
        /// Restarts per class count for the randomized search.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Monte Carlo count of pairs left unseparated by random ζ-sets.
    Estimate {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Order of PG(2, q).
    #[arg(long)]
    pub q: Option<u32>,
    /// Plane document to load instead.
    #[arg(long)]
    pub plane: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Exhaustive when the graph fits the bitmask search, else randomized.
    Auto,
    Exhaustive,
    Randomized,
}

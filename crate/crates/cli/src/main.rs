mod args;
mod render;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use args::{Cli, Command, Format, Method, Output, Source};
use planepart::analysis::{self, MAX_VERTICES};
use planepart::construct::{construct_partition, ConstructConfig, ConstructError};
use planepart::galois::Field;
use planepart::io::{to_pretty_json, PartitionDocument};
use planepart::metric::{is_resolving, Partition};
use planepart::plane::{build_pg2, load_plane_slice, IncidencePlane};

const EXIT_NOT_RESOLVING: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CONSTRUCTION: u8 = 3;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Construction(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Construction(_) => EXIT_CONSTRUCTION,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn pg2(q: u32) -> Result<IncidencePlane, Failure> {
    let field = Field::with_order(q as u64).map_err(|e| usage(format!("q = {q}: {e}")))?;
    Ok(build_pg2(&field))
}

fn load(source: &Source) -> Result<IncidencePlane, Failure> {
    match (source.q, &source.plane) {
        (Some(q), None) => pg2(q),
        (None, Some(path)) => {
            let bytes = fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            load_plane_slice(&bytes).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
        _ => Err(usage("exactly one of --q and --plane is required")),
    }
}

fn emit<T: Serialize>(output: &Output, value: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
    let body = match output.format {
        Format::Json => to_pretty_json(value),
        Format::Text => text(),
    };
    match &output.out {
        Some(path) => fs::write(path, body).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn workers(requested: Option<usize>) -> usize {
    requested
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn with_workers<T: Send>(requested: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers(requested))
        .build()
        .expect("thread pool")
        .install(f)
}

fn read_partition(plane: &IncidencePlane, path: &Path) -> Result<Partition, Failure> {
    let bytes = fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Partition::from_json(plane, &bytes).map_err(|e| usage(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct RandomizedReport {
    q: u32,
    method: &'static str,
    smallest: Option<usize>,
    levels: Vec<analysis::DescentLevel>,
    witness: Option<PartitionDocument>,
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Plane { q, output } => {
            let plane = pg2(q)?;
            emit(&output, &plane.to_document(), || render::plane(&plane))?;
        }
        Command::Construct { source, seed, retries, k, l, workers: w, output } => {
            let plane = load(&source)?;
            let config = ConstructConfig { seed, max_retries: retries, k, l, support: None, workers: workers(w) };
            match construct_partition(&plane, &config) {
                Ok(res) => {
                    let doc = res.partition.to_document(plane.q(), Some(res.metadata.clone()));
                    emit(&output, &doc, || render::construction(&res))?;
                }
                Err(ConstructError::RetriesExhausted { attempts, failures, .. }) => {
                    let mut msg = format!("construction failed after {attempts} attempts");
                    for f in &failures {
                        msg.push_str(&format!("\n  {f}"));
                    }
                    return Err(Failure::Construction(msg));
                }
                Err(e) => return Err(usage(e)),
            }
        }
        Command::Verify { source, partition, output } => {
            let plane = load(&source)?;
            let p = read_partition(&plane, &partition)?;
            let verdict = is_resolving(&plane, &p);
            emit(&output, &verdict, || render::verdict(&verdict, p.class_count()))?;
            if !verdict.is_resolving() {
                return Ok(EXIT_NOT_RESOLVING);
            }
        }
        Command::Bounds { q, output } => {
            let b = analysis::lower_bound(q).map_err(usage)?;
            emit(&output, &b, || render::bounds(&b))?;
        }
        Command::Search { source, method, tmin, tmax, budget, trials, seed, workers: w, output } => {
            let plane = load(&source)?;
            let vertices = 2 * plane.n();
            let t_min = tmin.unwrap_or(1);
            let t_max = tmax.unwrap_or(vertices);
            let exhaustive = match method {
                Method::Auto => vertices <= MAX_VERTICES,
                Method::Exhaustive => true,
                Method::Randomized => false,
            };
            if exhaustive {
                let r = with_workers(w, || analysis::exhaustive_pd(&plane, t_min, t_max, budget)).map_err(usage)?;
                emit(&output, &r, || render::search(&r))?;
            } else {
                let d = with_workers(w, || analysis::descend_upper_bound(&plane, t_max, t_min, trials, seed));
                let report = RandomizedReport {
                    q: plane.q(),
                    method: "randomized",
                    smallest: d.smallest,
                    levels: d.levels,
                    witness: d.witness.map(|p| p.to_document(plane.q(), None)),
                };
                emit(&output, &report, || render::descent(report.q, report.smallest, &report.levels))?;
            }
        }
        Command::Estimate { q, k, trials, seed, workers: w, output } => {
            let plane = pg2(q)?;
            let k = k.unwrap_or_else(|| planepart::construct::default_k(q));
            let r = analysis::estimate_unseparated(&plane, k, trials, seed, Some(workers(w))).map_err(usage)?;
            emit(&output, &r, || render::estimate(&r))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("PLANEPART_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Construction(m) => eprintln!("{m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

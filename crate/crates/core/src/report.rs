//! Benchmark grids and their JSON/CSV reports.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::{generate, DistKind, Distribution};
use crate::instrument::run_instrumented;
use crate::quicksort::quicksort_ref;
use crate::sort::SortConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("invalid benchmark grid: {0}")]
    InvalidGrid(String),
    #[error("malformed JSON report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed CSV report: {0}")]
    Csv(#[from] csv::Error),
    #[error("report has no rows")]
    Empty,
    #[error("failed to build thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algo {
    Lfsort,
    QuicksortRef,
    PlatformSort,
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::Lfsort => "lfsort",
            Algo::QuicksortRef => "quicksort_ref",
            Algo::PlatformSort => "platform_sort",
        })
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lfsort" => Ok(Algo::Lfsort),
            "quicksort_ref" => Ok(Algo::QuicksortRef),
            "platform_sort" => Ok(Algo::PlatformSort),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchReportRow {
    pub algo: Algo,
    /// Only set for `lfsort`.
    pub k: Option<u32>,
    pub n: usize,
    pub dist: String,
    pub seed: u64,
    pub trial: u32,
    pub comparisons: u64,
    pub moves: u64,
    pub max_depth: usize,
    pub wall_ns: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub algos: Vec<Algo>,
    pub k: Vec<u32>,
    pub sizes: Vec<usize>,
    pub dist: Vec<String>,
    pub trials: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: BenchConfig,
    pub rows: Vec<BenchReportRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected json or csv)")),
        }
    }
}

struct Job {
    algo: Algo,
    config: Option<SortConfig>,
    n: usize,
    dist: DistKind,
    trial: u32,
}

/// Runs every (algorithm configuration, size, distribution, trial) cell.
///
/// Trial `t` draws its input with seed `seed + t` (wrapping). Rows come back
/// in canonical `(algo, k, n, dist, trial)` order regardless of how the work
/// was scheduled; `threads` caps the worker pool.
pub fn run_bench(config: &BenchConfig, threads: Option<usize>) -> Result<Report, ReportError> {
    if config.trials == 0 {
        return Err(ReportError::InvalidGrid("trials must be at least 1".into()));
    }
    if config.algos.is_empty() || config.sizes.is_empty() || config.dist.is_empty() {
        return Err(ReportError::InvalidGrid("algorithms, sizes and distributions must be non-empty".into()));
    }
    let dists = config
        .dist
        .iter()
        .map(|d| d.parse::<DistKind>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| ReportError::InvalidGrid(e.to_string()))?;
    let sort_configs = config
        .k
        .iter()
        .map(|&k| SortConfig::new(k))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| ReportError::InvalidGrid(e.to_string()))?;
    if config.algos.contains(&Algo::Lfsort) && sort_configs.is_empty() {
        return Err(ReportError::InvalidGrid("lfsort needs at least one k".into()));
    }

    let mut algo_configs: Vec<(Algo, Option<SortConfig>)> = Vec::new();
    for &algo in &config.algos {
        match algo {
            Algo::Lfsort => algo_configs.extend(sort_configs.iter().map(|c| (algo, Some(*c)))),
            _ => algo_configs.push((algo, None)),
        }
    }
    algo_configs.sort_by_key(|(a, c)| (*a, c.map(|c| c.k())));
    algo_configs.dedup();

    let mut jobs = Vec::new();
    for &(algo, sc) in &algo_configs {
        for &n in &config.sizes {
            for &dist in &dists {
                for trial in 0..config.trials {
                    jobs.push(Job {
                        algo,
                        config: sc,
                        n,
                        dist,
                        trial,
                    });
                }
            }
        }
    }

    let run = || {
        jobs.par_iter()
            .map(|job| run_job(job, config.seed))
            .collect::<Vec<_>>()
    };
    let mut rows = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build()?.install(run),
        None => run(),
    };
    rows.sort_by(|a, b| {
        (a.algo, a.k, a.n, &a.dist, a.trial, a.seed).cmp(&(b.algo, b.k, b.n, &b.dist, b.trial, b.seed))
    });
    rows.dedup();

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        rows,
    })
}

fn run_job(job: &Job, seed: u64) -> BenchReportRow {
    let seed = seed.wrapping_add(job.trial as u64);
    let input = generate(&Distribution::new(job.dist, job.n, seed)).expect("distribution validated");
    let (comparisons, moves, max_depth, wall_ns) = match job.algo {
        Algo::Lfsort => {
            let (_, m) = run_instrumented(&input, job.config.as_ref().expect("lfsort carries k"));
            (m.comparisons, m.moves, m.max_depth, m.wall_ns)
        }
        Algo::QuicksortRef => {
            let mut v = input;
            let count = Cell::new(0u64);
            let start = Instant::now();
            quicksort_ref(&mut v, &mut |a: &i64, b: &i64| {
                count.set(count.get() + 1);
                a < b
            });
            (count.get(), 0, 0, start.elapsed().as_nanos() as u64)
        }
        Algo::PlatformSort => {
            let mut v = input;
            let count = Cell::new(0u64);
            let start = Instant::now();
            v.sort_unstable_by(|a, b| {
                count.set(count.get() + 1);
                a.cmp(b)
            });
            (count.get(), 0, 0, start.elapsed().as_nanos() as u64)
        }
    };
    BenchReportRow {
        algo: job.algo,
        k: job.config.map(|c| c.k()),
        n: job.n,
        dist: job.dist.to_string(),
        seed,
        trial: job.trial,
        comparisons,
        moves,
        max_depth,
        wall_ns,
    }
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, ReportError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => rows_to_csv(&self.rows),
        }
    }
}

pub fn rows_to_csv(rows: &[BenchReportRow]) -> Result<String, ReportError> {
    let mut w = csv::WriterBuilder::new().has_headers(true).from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record([
            "algo",
            "k",
            "n",
            "dist",
            "seed",
            "trial",
            "comparisons",
            "moves",
            "max_depth",
            "wall_ns",
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| ReportError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Reads rows from either report format; JSON is recognized by a leading `{`.
pub fn parse_rows(text: &str) -> Result<Vec<BenchReportRow>, ReportError> {
    let rows = if text.trim_start().starts_with('{') {
        serde_json::from_str::<Report>(text)?.rows
    } else {
        csv::Reader::from_reader(text.as_bytes())
            .deserialize()
            .collect::<Result<Vec<BenchReportRow>, _>>()?
    };
    if rows.is_empty() {
        return Err(ReportError::Empty);
    }
    Ok(rows)
}

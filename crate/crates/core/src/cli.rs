//! The `lfsort` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::cost_model::{stage_points, CostModel};
use crate::fit;
use crate::report::{self, Algo, BenchConfig, Format};
use crate::sort::{sort, SortConfig};
use crate::text;
use crate::verify::{self, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lfsort", version, about = "Generalized leapfrogging samplesort toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sort a file of integers, one per line.
    Sort(SortArgs),
    /// Run a benchmark grid and write a JSON or CSV report.
    Bench(BenchArgs),
    /// Check the sort and cost-model invariants.
    Verify(VerifyArgs),
    /// Tabulate the worst-case bound and average-case model.
    Model(ModelArgs),
    /// Fit growth rates to a benchmark report.
    Fit(FitArgs),
}

#[derive(Debug, Args)]
pub struct SortArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Defaults to standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub k: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "1024")]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "random")]
    pub dist: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub trials: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "json")]
    pub format: Format,
    /// Defaults to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// quicksort_ref is quadratic on presorted inputs, so it is opt-in.
    #[arg(long, value_delimiter = ',', default_value = "lfsort,platform_sort")]
    pub algos: Vec<Algo>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 256)]
    pub max_n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
    pub k: Vec<u32>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 1 << 20)]
    pub max_n: u64,
    /// Defaults to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Report produced by `lfsort bench`.
    #[arg(long)]
    pub input: PathBuf,
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match cli.command {
        Command::Sort(a) => cmd_sort(&a),
        Command::Bench(a) => cmd_bench(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Model(a) => cmd_model(&a),
        Command::Fit(a) => cmd_fit(&a),
    }
}

fn usage_error(msg: impl std::fmt::Display) -> i32 {
    eprintln!("lfsort: {msg}");
    EXIT_USAGE
}

fn emit(out: Option<&Path>, contents: &str) -> i32 {
    let result = match out {
        Some(path) => fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(msg) => usage_error(msg),
    }
}

pub fn cmd_sort(args: &SortArgs) -> i32 {
    let config = match SortConfig::new(args.k) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    let contents = match fs::read_to_string(&args.input) {
        Ok(s) => s,
        Err(e) => return usage_error(format!("cannot read {}: {e}", args.input.display())),
    };
    let mut values = match text::parse_elements(&contents) {
        Ok(v) => v,
        Err(e) => return usage_error(format!("{}: {e}", args.input.display())),
    };
    sort(&mut values, &config);
    emit(args.output.as_deref(), &text::format_elements(&values))
}

pub fn cmd_bench(args: &BenchArgs) -> i32 {
    let config = BenchConfig {
        algos: args.algos.clone(),
        k: args.k.clone(),
        sizes: args.sizes.clone(),
        dist: args.dist.clone(),
        trials: args.trials,
        seed: args.seed,
    };
    let threads = match std::env::var("LFSORT_THREADS") {
        Ok(v) => match v.parse::<usize>() {
            Ok(t) if t > 0 => Some(t),
            _ => return usage_error(format!("LFSORT_THREADS must be a positive integer, got `{v}`")),
        },
        Err(_) => None,
    };
    let report = match report::run_bench(&config, threads) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    match report.render(args.format) {
        Ok(s) => emit(args.out.as_deref(), &s),
        Err(e) => usage_error(e),
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> i32 {
    if let Some(bad) = args.k.iter().find(|&&k| SortConfig::new(k).is_err()) {
        return usage_error(SortConfig::new(*bad).unwrap_err());
    }
    let opts = VerifyOptions {
        max_n: args.max_n,
        seed: args.seed,
        ks: args.k.clone(),
    };
    let outcome = verify::run(&opts, verify::natural_order);
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    for f in &outcome.failures {
        println!("{f}");
    }
    if outcome.passed() {
        println!("ok: {} checks passed", outcome.checks);
        EXIT_OK
    } else {
        println!("{} invariant(s) violated over {} checks", outcome.failures.len(), outcome.checks);
        EXIT_VERIFY_FAILED
    }
}

/// CSV rows `n,k,kind,W,A` over the stage points and the powers of two up to
/// `max_n`; `A` is blank when no exact small-size table exists for `k`.
pub fn model_table(k: u32, max_n: u64) -> Result<String, crate::error::CostError> {
    let mut model = match CostModel::with_table(k) {
        Ok(m) => m,
        Err(crate::error::CostError::TooLarge(_)) => CostModel::new(k)?,
        Err(e) => return Err(e),
    };
    let mut points: Vec<(u64, &str)> = stage_points(k, max_n).into_iter().map(|n| (n, "stage")).collect();
    let mut p = 2u64;
    while p <= max_n {
        if !points.iter().any(|&(n, _)| n == p) {
            points.push((p, "grid"));
        }
        p = match p.checked_mul(2) {
            Some(q) => q,
            None => break,
        };
    }
    points.sort_unstable();

    let mut out = String::from("n,k,kind,W,A\n");
    for (n, kind) in points {
        let w = model.worst_case_bound(n);
        let a = if model.table().is_some() {
            format!("{:.6}", model.avg_case_model(n)?)
        } else {
            String::new()
        };
        writeln!(out, "{n},{k},{kind},{w:.6},{a}").unwrap();
    }
    Ok(out)
}

pub fn cmd_model(args: &ModelArgs) -> i32 {
    if let Err(e) = SortConfig::new(args.k) {
        return usage_error(e);
    }
    match model_table(args.k, args.max_n) {
        Ok(s) => emit(args.out.as_deref(), &s),
        Err(e) => usage_error(e),
    }
}

pub fn cmd_fit(args: &FitArgs) -> i32 {
    let contents = match fs::read_to_string(&args.input) {
        Ok(s) => s,
        Err(e) => return usage_error(format!("cannot read {}: {e}", args.input.display())),
    };
    let rows = match report::parse_rows(&contents) {
        Ok(r) => r,
        Err(e) => return usage_error(format!("{}: {e}", args.input.display())),
    };
    emit(None, &fit::render(&fit::fit_rows(&rows)))
}

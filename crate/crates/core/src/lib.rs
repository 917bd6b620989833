//! Generalized leapfrogging samplesort: an in-place comparison sort that
//! grows a sorted sample by repeatedly partitioning an unsorted part
//! `2^k - 1` times larger than the sample (plus one), together with
//! comparison instrumentation, seeded input generators, cost recurrences,
//! and the benchmark tooling behind the `lfsort` binary.

pub mod cli;
pub mod cost_model;
pub mod error;
pub mod fit;
pub mod generators;
pub mod instrument;
pub mod quicksort;
pub mod report;
pub mod sort;
pub mod text;
pub mod verify;

pub use cost_model::{avg_case_model, brute_force_avg, stage_points, worst_case_bound, ASmallTable, CostModel};
pub use error::{ConfigError, CostError, GenError};
pub use generators::{generate, DistKind, Distribution};
pub use instrument::{counting_comparator, run_instrumented, Metrics};
pub use quicksort::quicksort_ref;
pub use sort::{
    compute_schedule, leapfrog, lf_samplesort, move_sample, partition_unsorted, sort, Region, SortConfig, Stage,
};

//! Python bindings for `lfsort_core`.
//!
//! Elements cross the boundary as Python `int`s that fit in a signed 64-bit
//! integer. Invalid arguments raise `ValueError`.

use std::cell::Cell;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use lfsort_core::verify::{self, VerifyOptions};
use lfsort_core::{cost_model, generators, instrument, quicksort, sort};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn config(k: u32) -> PyResult<sort::SortConfig> {
    sort::SortConfig::new(k).map_err(value_error)
}

/// Metrics of one instrumented sort run.
#[pyclass(frozen, skip_from_py_object, name = "Metrics")]
#[derive(Debug, Clone)]
pub struct PyMetrics {
    #[pyo3(get)]
    comparisons: u64,
    #[pyo3(get)]
    moves: u64,
    #[pyo3(get)]
    max_depth: usize,
    /// Top-level schedule as `(sample, unsorted)` pairs.
    #[pyo3(get)]
    stages: Vec<(usize, usize)>,
    #[pyo3(get)]
    wall_ns: u64,
}

#[pymethods]
impl PyMetrics {
    fn __repr__(&self) -> String {
        format!(
            "Metrics(comparisons={}, moves={}, max_depth={}, stages={:?})",
            self.comparisons, self.moves, self.max_depth, self.stages
        )
    }
}

impl From<instrument::Metrics> for PyMetrics {
    fn from(m: instrument::Metrics) -> Self {
        PyMetrics {
            comparisons: m.comparisons,
            moves: m.moves,
            max_depth: m.max_depth,
            stages: m.stages.iter().map(|s| (s.sample, s.unsorted)).collect(),
            wall_ns: m.wall_ns,
        }
    }
}

/// Memoized worst-case bound and average-case model for one `k`.
#[pyclass(name = "CostModel")]
pub struct PyCostModel {
    inner: cost_model::CostModel,
}

#[pymethods]
impl PyCostModel {
    #[new]
    #[pyo3(signature = (k=1))]
    fn new(k: u32) -> PyResult<Self> {
        let inner = match cost_model::CostModel::with_table(k) {
            Ok(m) => m,
            Err(lfsort_core::CostError::TooLarge(_)) => cost_model::CostModel::new(k).map_err(value_error)?,
            Err(e) => return Err(value_error(e)),
        };
        Ok(PyCostModel { inner })
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k()
    }

    fn worst_case_bound(&mut self, n: u64) -> f64 {
        self.inner.worst_case_bound(n)
    }

    /// Raises `ValueError` when `2^k - 1` is too large for an exact table.
    fn avg_case_model(&mut self, n: u64) -> PyResult<f64> {
        self.inner.avg_case_model(n).map_err(value_error)
    }
}

/// Returns a sorted copy of `values`.
#[pyfunction]
#[pyo3(signature = (values, k=1))]
fn lf_sort(py: Python<'_>, mut values: Vec<i64>, k: u32) -> PyResult<Vec<i64>> {
    let config = config(k)?;
    py.detach(|| sort::sort(&mut values, &config));
    Ok(values)
}

#[pyfunction]
#[pyo3(signature = (values, k=1))]
fn run_instrumented(py: Python<'_>, values: Vec<i64>, k: u32) -> PyResult<(Vec<i64>, PyMetrics)> {
    let config = config(k)?;
    let (out, metrics) = py.detach(|| instrument::run_instrumented(&values, &config));
    Ok((out, metrics.into()))
}

#[pyfunction]
#[pyo3(signature = (n, k=1))]
fn compute_schedule(n: usize, k: u32) -> PyResult<Vec<(usize, usize)>> {
    Ok(sort::compute_schedule(n, &config(k)?)
        .into_iter()
        .map(|s| (s.sample, s.unsorted))
        .collect())
}

/// Sorts a copy with the first-element-pivot reference quicksort and returns
/// it with its comparison count.
#[pyfunction]
fn quicksort_ref(mut values: Vec<i64>) -> (Vec<i64>, u64) {
    let count = Cell::new(0u64);
    quicksort::quicksort_ref(&mut values, &mut |a: &i64, b: &i64| {
        count.set(count.get() + 1);
        a < b
    });
    (values, count.get())
}

/// `dist` is one of `random`, `sorted`, `reversed`, `fewunique:<d>`, `equal`.
#[pyfunction]
#[pyo3(signature = (dist, n, seed=0))]
fn generate(dist: &str, n: usize, seed: u64) -> PyResult<Vec<i64>> {
    let kind: generators::DistKind = dist.parse().map_err(value_error)?;
    generators::generate(&generators::Distribution::new(kind, n, seed)).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (n, k=1))]
fn worst_case_bound(n: u64, k: u32) -> PyResult<f64> {
    cost_model::worst_case_bound(n, k).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (n, k=1))]
fn avg_case_model(n: u64, k: u32) -> PyResult<f64> {
    PyCostModel::new(k)?.avg_case_model(n)
}

/// Exact mean comparisons over all `n!` orderings, as a `fractions.Fraction`.
#[pyfunction]
#[pyo3(signature = (n, k=1))]
fn brute_force_avg<'py>(py: Python<'py>, n: usize, k: u32) -> PyResult<Bound<'py, PyAny>> {
    let config = config(k)?;
    let mean = py
        .detach(|| cost_model::brute_force_avg(n, &config))
        .map_err(value_error)?;
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((*mean.numer(), *mean.denom()))
}

#[pyfunction]
#[pyo3(signature = (k, max_n))]
fn stage_points(k: u32, max_n: u64) -> PyResult<Vec<u64>> {
    config(k)?;
    Ok(cost_model::stage_points(k, max_n))
}

/// Runs the invariant suite and returns the failure lines (empty on success).
#[pyfunction]
#[pyo3(signature = (max_n=64, seed=0, ks=vec![1, 2, 3, 4]))]
fn verify_invariants(py: Python<'_>, max_n: usize, seed: u64, ks: Vec<u32>) -> PyResult<Vec<String>> {
    for &k in &ks {
        config(k)?;
    }
    let opts = VerifyOptions { max_n, seed, ks };
    let outcome = py.detach(|| verify::run(&opts, verify::natural_order));
    Ok(outcome.failures.iter().map(|f| f.to_string()).collect())
}

#[pymodule]
fn lfsort(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMetrics>()?;
    m.add_class::<PyCostModel>()?;
    m.add_function(wrap_pyfunction!(lf_sort, m)?)?;
    m.add("sort", m.getattr("lf_sort")?)?;
    m.add_function(wrap_pyfunction!(run_instrumented, m)?)?;
    m.add_function(wrap_pyfunction!(compute_schedule, m)?)?;
    m.add_function(wrap_pyfunction!(quicksort_ref, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(worst_case_bound, m)?)?;
    m.add_function(wrap_pyfunction!(avg_case_model, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_avg, m)?)?;
    m.add_function(wrap_pyfunction!(stage_points, m)?)?;
    m.add_function(wrap_pyfunction!(verify_invariants, m)?)?;
    m.add("MAX_K", sort::MAX_K)?;
    Ok(())
}

//! Comparison counting and run metrics.

use std::cell::Cell;
use std::time::Instant;

use serde::Serialize;

use crate::sort::{lf_samplesort_observed, Observer, SortConfig, Stage};

/// Measurements for one sort run. Everything except `wall_ns` is a pure
/// function of the input and the configuration.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub comparisons: u64,
    /// Element writes; a swap of two distinct positions counts as 3.
    pub moves: u64,
    /// Deepest nesting of samplesort and leapfrog frames.
    pub max_depth: usize,
    /// Stages executed by the outermost schedule loop.
    pub stages: Vec<Stage>,
    pub wall_ns: u64,
}

impl Metrics {
    /// Copy with the timing field zeroed, for determinism checks.
    pub fn deterministic(&self) -> Metrics {
        Metrics {
            wall_ns: 0,
            ..self.clone()
        }
    }
}

/// Wraps `base` so that every invocation bumps `counter` once.
pub fn counting_comparator<'c, T, F>(mut base: F, counter: &'c Cell<u64>) -> impl FnMut(&T, &T) -> bool + 'c
where
    F: FnMut(&T, &T) -> bool + 'c,
    T: ?Sized,
{
    move |a, b| {
        counter.set(counter.get() + 1);
        base(a, b)
    }
}

/// Observer collecting moves, depth, and top-level stages.
#[derive(Debug, Default)]
pub struct Recorder {
    pub moves: u64,
    pub max_depth: usize,
    pub stages: Vec<Stage>,
}

impl Observer for Recorder {
    fn enter(&mut self, depth: usize) {
        self.max_depth = self.max_depth.max(depth);
    }

    fn stage(&mut self, stage: Stage, depth: usize) {
        if depth == 1 {
            self.stages.push(stage);
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        if a != b {
            self.moves += 3;
        }
    }
}

/// A single partition pass as seen by an observer; indices are inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionEvent {
    pub sm: usize,
    pub ss: usize,
    pub u: usize,
    pub j: usize,
}

/// Observer logging every partition pass.
#[derive(Debug, Default)]
pub struct PartitionLog {
    pub events: Vec<PartitionEvent>,
}

impl Observer for PartitionLog {
    fn partition(&mut self, sm: usize, ss: usize, u: usize, j: usize) {
        self.events.push(PartitionEvent { sm, ss, u, j });
    }
}

/// Sorts a copy of `input` and reports its metrics.
pub fn run_instrumented<T: Ord + Clone>(input: &[T], config: &SortConfig) -> (Vec<T>, Metrics) {
    run_instrumented_by(input, config, |a: &T, b: &T| a < b, &mut ())
}

/// Like [`run_instrumented`] with a caller-supplied order and an extra
/// observer riding along.
pub fn run_instrumented_by<T, F, O>(input: &[T], config: &SortConfig, is_less: F, extra: &mut O) -> (Vec<T>, Metrics)
where
    T: Clone,
    F: FnMut(&T, &T) -> bool,
    O: Observer,
{
    let mut out = input.to_vec();
    let counter = Cell::new(0);
    let mut cmp = counting_comparator(is_less, &counter);
    let mut recorder = Recorder::default();
    let start = Instant::now();
    lf_samplesort_observed(&mut out, config, &mut cmp, &mut (&mut recorder, extra));
    let wall_ns = start.elapsed().as_nanos() as u64;
    let metrics = Metrics {
        comparisons: counter.get(),
        moves: recorder.moves,
        max_depth: recorder.max_depth,
        stages: recorder.stages,
        wall_ns,
    };
    (out, metrics)
}

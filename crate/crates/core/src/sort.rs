//! Generalized leapfrogging samplesort.
//!
//! The array is consumed left to right in stages. A sorted prefix of `s`
//! elements (the sample) is used to partition the next `(2^k - 1)(s + 1)`
//! elements: the middle sample element splits the unsorted part, the pivot and
//! the right half of the sample are block-swapped past the left partition, and
//! each half recurses with its own half of the sample. Once a sub-sample is
//! empty, the partition it bounds is sorted by the samplesort itself.
//!
//! Recursion is driven by an explicit work stack so that degenerate
//! configurations (large `k`, where the algorithm becomes first-element-pivot
//! quicksort) cannot overflow the call stack. Frames are pushed in reverse so
//! the comparison sequence is exactly that of the recursive formulation.

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

/// Largest accepted fan-out exponent.
pub const MAX_K: u32 = 40;

/// Fan-out exponent `k` and the derived multiplier `m = 2^k - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SortConfig {
    k: u32,
    m: usize,
}

impl SortConfig {
    pub fn new(k: u32) -> Result<Self, ConfigError> {
        if k == 0 {
            return Err(ConfigError::ZeroExponent);
        }
        if k > MAX_K {
            return Err(ConfigError::ExponentTooLarge(k));
        }
        Ok(SortConfig {
            k,
            m: (1usize << k) - 1,
        })
    }

    /// Smallest configuration whose multiplier is at least `m`.
    pub fn with_multiplier_at_least(m: usize) -> Result<Self, ConfigError> {
        let k = (usize::BITS - m.leading_zeros()).max(1);
        Self::new(k)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The multiplier `2^k - 1`.
    pub fn multiplier(&self) -> usize {
        self.m
    }

    /// Size of the unsorted part partitioned by a sample of `s` elements.
    ///
    /// Saturates instead of overflowing: a saturated value exceeds every
    /// slice length, so the schedule guard rejects it exactly as unbounded
    /// arithmetic would.
    pub fn unsorted_len(&self, s: usize) -> usize {
        self.m.saturating_mul(s.saturating_add(1))
    }
}

impl Default for SortConfig {
    fn default() -> Self {
        SortConfig { k: 1, m: 1 }
    }
}

/// One step of the schedule: a sorted sample of `sample` elements absorbing
/// the following `unsorted` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Stage {
    pub sample: usize,
    pub unsorted: usize,
}

impl Stage {
    pub fn new(sample: usize, unsorted: usize) -> Self {
        Stage { sample, unsorted }
    }
}

/// A leapfrog region in half-open form: the sorted sample occupies
/// `start..sample_end` and the unsorted part `sample_end..end`.
///
/// `start == sample_end` is an empty sample; `end <= sample_end` means there
/// is nothing to partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Region {
    pub start: usize,
    pub sample_end: usize,
    pub end: usize,
}

impl Region {
    pub fn new(start: usize, sample_end: usize, end: usize) -> Self {
        debug_assert!(start <= sample_end);
        Region {
            start,
            sample_end,
            end,
        }
    }

    pub fn sample_len(&self) -> usize {
        self.sample_end - self.start
    }

    pub fn unsorted_len(&self) -> usize {
        self.end.saturating_sub(self.sample_end)
    }
}

/// The stages executed by the schedule loop for an array of length `n`,
/// followed by the trailing stage that absorbs the remainder.
///
/// Sample sizes follow `s' = 2^k * s + (2^k - 1)`, i.e. `s_j = 2^(k j) - 1`.
pub fn compute_schedule(n: usize, config: &SortConfig) -> Vec<Stage> {
    let mut stages = Vec::new();
    if n < 2 {
        return stages;
    }
    let m = config.multiplier();
    let mut s = 1usize;
    loop {
        let r = config.unsorted_len(s);
        match s.checked_add(r) {
            Some(total) if total <= n => {
                stages.push(Stage::new(s, r));
                // (m + 1) s + m == s + r
                s = (m + 1) * s + m;
            }
            _ => break,
        }
    }
    stages.push(Stage::new(s, n - s));
    stages
}

/// Hooks into a sort run. All methods default to no-ops, so `()` is the
/// zero-cost observer.
pub trait Observer {
    /// A samplesort or leapfrog frame was entered at nesting `depth` (the
    /// outermost samplesort is depth 1).
    fn enter(&mut self, _depth: usize) {}
    /// The schedule loop of a samplesort frame at `depth` executed `stage`.
    fn stage(&mut self, _stage: Stage, _depth: usize) {}
    /// A partition pass with pivot index `sm` over `ss+1..=u` returned `j`.
    fn partition(&mut self, _sm: usize, _ss: usize, _u: usize, _j: usize) {}
    /// Two positions were exchanged.
    fn swap(&mut self, _a: usize, _b: usize) {}
}

impl Observer for () {}

impl<O: Observer + ?Sized> Observer for &mut O {
    fn enter(&mut self, depth: usize) {
        (**self).enter(depth)
    }
    fn stage(&mut self, stage: Stage, depth: usize) {
        (**self).stage(stage, depth)
    }
    fn partition(&mut self, sm: usize, ss: usize, u: usize, j: usize) {
        (**self).partition(sm, ss, u, j)
    }
    fn swap(&mut self, a: usize, b: usize) {
        (**self).swap(a, b)
    }
}

impl<A: Observer, B: Observer> Observer for (A, B) {
    fn enter(&mut self, depth: usize) {
        self.0.enter(depth);
        self.1.enter(depth);
    }
    fn stage(&mut self, stage: Stage, depth: usize) {
        self.0.stage(stage, depth);
        self.1.stage(stage, depth);
    }
    fn partition(&mut self, sm: usize, ss: usize, u: usize, j: usize) {
        self.0.partition(sm, ss, u, j);
        self.1.partition(sm, ss, u, j);
    }
    fn swap(&mut self, a: usize, b: usize) {
        self.0.swap(a, b);
        self.1.swap(a, b);
    }
}

/// Sorts `v` in place with the natural order.
pub fn sort<T: Ord>(v: &mut [T], config: &SortConfig) {
    lf_samplesort(v, config, &mut |a: &T, b: &T| a < b);
}

/// Sorts `v` in place using the strict-weak-order predicate `is_less`.
pub fn lf_samplesort<T, F>(v: &mut [T], config: &SortConfig, is_less: &mut F)
where
    F: FnMut(&T, &T) -> bool,
{
    lf_samplesort_observed(v, config, is_less, &mut ());
}

pub fn lf_samplesort_observed<T, F, O>(v: &mut [T], config: &SortConfig, is_less: &mut F, obs: &mut O)
where
    F: FnMut(&T, &T) -> bool,
    O: Observer,
{
    let hi = v.len();
    run(v, config, is_less, obs, Frame::Samplesort { lo: 0, hi, depth: 1 });
}

/// Sorts `region` given that its sample is already sorted.
///
/// An empty sample delegates the whole unsorted part to [`lf_samplesort`].
pub fn leapfrog<T, F>(v: &mut [T], region: Region, config: &SortConfig, is_less: &mut F)
where
    F: FnMut(&T, &T) -> bool,
{
    leapfrog_observed(v, region, config, is_less, &mut ());
}

pub fn leapfrog_observed<T, F, O>(v: &mut [T], region: Region, config: &SortConfig, is_less: &mut F, obs: &mut O)
where
    F: FnMut(&T, &T) -> bool,
    O: Observer,
{
    assert!(region.start <= region.sample_end, "sample start past sample end");
    assert!(region.sample_end.max(region.end) <= v.len(), "region out of bounds");
    run(v, config, is_less, obs, Frame::Leapfrog { region, depth: 1 });
}

/// Lomuto pass over `ss+1..=u` against the pivot `v[sm]`.
///
/// Returns `j` such that `ss+1..=j` holds the elements less than the pivot and
/// `j+1..=u` the rest. Makes exactly `u - ss` calls to `is_less`.
pub fn partition_unsorted<T, F>(v: &mut [T], sm: usize, ss: usize, u: usize, is_less: &mut F) -> usize
where
    F: FnMut(&T, &T) -> bool,
{
    partition_observed(v, sm, ss, u, is_less, &mut ())
}

/// Relocates the pivot and right subsample `v[sm..=ss]` to end at `j`,
/// shifting the left partition down to start at `sm`.
pub fn move_sample<T>(v: &mut [T], sm: usize, ss: usize, j: usize) {
    move_sample_observed(v, sm, ss, j, &mut ());
}

fn partition_observed<T, F, O>(v: &mut [T], sm: usize, ss: usize, u: usize, is_less: &mut F, obs: &mut O) -> usize
where
    F: FnMut(&T, &T) -> bool,
    O: Observer,
{
    debug_assert!(sm <= ss && ss < u);
    let mut j = ss;
    for i in ss + 1..=u {
        if is_less(&v[i], &v[sm]) {
            j += 1;
            v.swap(j, i);
            obs.swap(j, i);
        }
    }
    obs.partition(sm, ss, u, j);
    j
}

fn move_sample_observed<T, O: Observer>(v: &mut [T], sm: usize, ss: usize, j: usize, obs: &mut O) {
    if j <= ss {
        return;
    }
    let shift = j - ss;
    for i in (sm..=ss).rev() {
        v.swap(i, i + shift);
        obs.swap(i, i + shift);
    }
}

enum Frame {
    Samplesort { lo: usize, hi: usize, depth: usize },
    Leapfrog { region: Region, depth: usize },
}

fn run<T, F, O>(v: &mut [T], config: &SortConfig, is_less: &mut F, obs: &mut O, root: Frame)
where
    F: FnMut(&T, &T) -> bool,
    O: Observer,
{
    let mut stack = vec![root];
    let mut stages: Vec<Stage> = Vec::new();

    while let Some(frame) = stack.pop() {
        match frame {
            Frame::Samplesort { lo, hi, depth } => {
                let len = hi - lo;
                if len < 2 {
                    continue;
                }
                obs.enter(depth);
                stages.clear();
                let mut s = 1usize;
                let mut r = config.unsorted_len(s);
                // s <= len - r, rearranged to avoid underflow
                while r <= len && s <= len - r {
                    stages.push(Stage::new(s, r));
                    s += r;
                    r = config.unsorted_len(s);
                }
                stages.push(Stage::new(s, len - s));
                for &stage in &stages {
                    obs.stage(stage, depth);
                }
                for stage in stages.iter().rev() {
                    let sample_end = lo + stage.sample;
                    stack.push(Frame::Leapfrog {
                        region: Region::new(lo, sample_end, sample_end + stage.unsorted),
                        depth: depth + 1,
                    });
                }
            }
            Frame::Leapfrog { region, depth } => {
                obs.enter(depth);
                let Region {
                    start,
                    sample_end,
                    end,
                } = region;
                if start == sample_end {
                    stack.push(Frame::Samplesort {
                        lo: sample_end,
                        hi: end,
                        depth: depth + 1,
                    });
                    continue;
                }
                if end <= sample_end {
                    continue;
                }
                let ss = sample_end - 1;
                let u = end - 1;
                let sm = (start + ss) / 2;
                let j = partition_observed(v, sm, ss, u, is_less, obs);
                move_sample_observed(v, sm, ss, j, obs);
                let shift = j - ss;
                // right: sample sm+shift+1..=j, unsorted j+1..=u
                stack.push(Frame::Leapfrog {
                    region: Region::new(sm + shift + 1, j + 1, end),
                    depth: depth + 1,
                });
                // left: sample start..sm, unsorted sm..sm+shift
                stack.push(Frame::Leapfrog {
                    region: Region::new(start, sm, sm + shift),
                    depth: depth + 1,
                });
            }
        }
    }
}

//! Self-check suite behind `lfsort verify`.
//!
//! The order under test is injected as a plain function so a deliberately
//! broken order (for example `<=` in place of `<`) can be run through the same
//! checks. Every check judges results with the native `i64` order and the
//! independent quicksort reference, never with the order under test.

use std::cell::Cell;
use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost_model::{brute_force_avg, stage_points, ASmallTable, CostModel};
use crate::generators::{generate, DistKind, Distribution};
use crate::instrument::{run_instrumented_by, PartitionLog};
use crate::quicksort::quicksort_ref;
use crate::sort::{
    compute_schedule, leapfrog, lf_samplesort, move_sample, partition_unsorted, Region, SortConfig,
};

pub type Order = fn(&i64, &i64) -> bool;

pub fn natural_order(a: &i64, b: &i64) -> bool {
    a < b
}

/// Inputs above this size skip the quicksort comparison, which is quadratic
/// on presorted data.
pub const DEGENERATION_MAX_N: usize = 2048;
/// The cost-model dominance check covers these exponents.
pub const DOMINANCE_MAX_K: u32 = 3;
const ORACLE_MAX_N: usize = 6;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_n: usize,
    pub seed: u64,
    pub ks: Vec<u32>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_n: 256,
            seed: 0,
            ks: vec![1, 2, 3, 4],
        }
    }
}

/// A violated invariant with enough context to replay it.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub check: &'static str,
    pub seed: u64,
    pub n: usize,
    pub k: Option<u32>,
    pub dist: Option<String>,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FAIL {}: seed={} n={}", self.check, self.seed, self.n)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        if let Some(d) = &self.dist {
            write!(f, " dist={d}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Debug, Default)]
pub struct VerifyOutcome {
    pub checks: u64,
    pub failures: Vec<Failure>,
    pub warnings: Vec<String>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Ctx {
    outcome: VerifyOutcome,
    failed: BTreeSet<&'static str>,
}

impl Ctx {
    /// Records the first failure of each check only; sizes are visited in
    /// increasing order, so that one is the smallest reproducer.
    fn check(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.outcome.checks += 1;
        if !ok {
            let f = failure();
            if self.failed.insert(f.check) {
                self.outcome.failures.push(f);
            }
        }
    }
}

fn sizes(opts: &VerifyOptions, configs: &[SortConfig]) -> Vec<usize> {
    let mut set: BTreeSet<usize> = (0..=opts.max_n.min(64)).collect();
    let mut p = 128;
    while p <= opts.max_n {
        set.insert(p);
        p *= 2;
    }
    for c in configs {
        set.extend(
            stage_points(c.k(), opts.max_n as u64)
                .into_iter()
                .map(|n| n as usize),
        );
    }
    set.insert(opts.max_n);
    set.into_iter().collect()
}

fn dists() -> [DistKind; 5] {
    [
        DistKind::RandomPerm,
        DistKind::SortedAsc,
        DistKind::SortedDesc,
        DistKind::FewUnique(5),
        DistKind::AllEqual,
    ]
}

pub fn run(opts: &VerifyOptions, order: Order) -> VerifyOutcome {
    let mut ctx = Ctx {
        outcome: VerifyOutcome::default(),
        failed: BTreeSet::new(),
    };
    if opts.max_n == 0 {
        ctx.outcome
            .warnings
            .push("max-n is 0: nothing to verify".to_string());
        return ctx.outcome;
    }
    let configs: Vec<SortConfig> = match opts.ks.iter().map(|&k| SortConfig::new(k)).collect() {
        Ok(c) => c,
        Err(e) => {
            ctx.outcome.warnings.push(e.to_string());
            return ctx.outcome;
        }
    };

    let sizes = sizes(opts, &configs);
    for &n in &sizes {
        for dist in dists() {
            check_sort_invariants(&mut ctx, &configs, n, dist, opts.seed, order);
        }
    }
    check_partition_and_move(&mut ctx, opts, order);
    check_pivot_levels(&mut ctx, opts, order);
    check_cost_model(&mut ctx, opts, &configs, order);
    ctx.outcome
}

fn check_sort_invariants(ctx: &mut Ctx, configs: &[SortConfig], n: usize, dist: DistKind, seed: u64, order: Order) {
    let input = generate(&Distribution::new(dist, n, seed)).expect("valid distribution");
    let mut expected = input.clone();
    expected.sort_unstable();
    let fail = |check: &'static str, k: Option<u32>, detail: String| {
        move || Failure {
            check,
            seed,
            n,
            k,
            dist: Some(dist.to_string()),
            detail,
        }
    };

    if let DistKind::FewUnique(d) = dist {
        let distinct: BTreeSet<_> = input.iter().collect();
        ctx.check(
            distinct.len() as u64 == d.min(n as u64),
            fail("generator-multiset", None, format!("{} distinct values", distinct.len())),
        );
    }
    if dist == DistKind::RandomPerm {
        ctx.check(
            expected.iter().copied().eq(0..n as i64),
            fail("generator-multiset", None, "not a permutation of 0..n".into()),
        );
    }

    let mut first_output: Option<Vec<i64>> = None;
    for config in configs {
        let k = Some(config.k());
        let tally = Cell::new(0u64);
        let mut log = PartitionLog::default();
        let (out, metrics) = run_instrumented_by(
            &input,
            config,
            |a: &i64, b: &i64| {
                tally.set(tally.get() + 1);
                order(a, b)
            },
            &mut log,
        );

        ctx.check(
            out.windows(2).all(|w| w[0] <= w[1]),
            fail("sortedness", k, "output not non-decreasing".into()),
        );
        let mut sorted_out = out.clone();
        sorted_out.sort_unstable();
        ctx.check(sorted_out == expected, fail("permutation", k, "multiset changed".into()));
        ctx.check(
            tally.get() == metrics.comparisons,
            fail(
                "exact-counting",
                k,
                format!("counter {} vs tally {}", metrics.comparisons, tally.get()),
            ),
        );
        let schedule = compute_schedule(n, config);
        ctx.check(
            metrics.stages == schedule,
            fail("schedule-consistency", k, format!("{:?} vs {:?}", metrics.stages, schedule)),
        );
        if n <= 1 {
            ctx.check(
                metrics.comparisons == 0 && metrics.moves == 0,
                fail("trivial-metrics", k, "work done on n <= 1".into()),
            );
        }

        let (again, metrics2) = run_instrumented_by(&input, config, order, &mut ());
        ctx.check(
            again == out && metrics2.deterministic() == metrics.deterministic(),
            fail("determinism", k, "repeated run differs".into()),
        );
        let mut plain = input.clone();
        lf_samplesort(&mut plain, config, &mut |a: &i64, b: &i64| order(a, b));
        ctx.check(plain == out, fail("uninstrumented-agreement", k, "outputs differ".into()));

        if dist == DistKind::SortedAsc {
            let bad = log.events.iter().find(|e| e.j != e.ss);
            ctx.check(
                bad.is_none(),
                fail("worst-case-trigger", k, format!("partition returned j != ss: {bad:?}")),
            );
        }

        match &first_output {
            None => first_output = Some(out),
            Some(first) => ctx.check(*first == out, fail("k-agreement", k, "output differs from first k".into())),
        }
    }

    if n <= DEGENERATION_MAX_N {
        let config = SortConfig::with_multiplier_at_least(n.saturating_sub(1)).expect("n fits");
        let (_, m) = run_instrumented_by(&input, &config, order, &mut ());
        let reference = Cell::new(0u64);
        let mut v = input.clone();
        quicksort_ref(&mut v, &mut |a: &i64, b: &i64| {
            reference.set(reference.get() + 1);
            a < b
        });
        ctx.check(
            m.comparisons == reference.get(),
            fail(
                "quicksort-degeneration",
                Some(config.k()),
                format!("{} vs reference {}", m.comparisons, reference.get()),
            ),
        );
    }
}

fn check_partition_and_move(ctx: &mut Ctx, opts: &VerifyOptions, order: Order) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9e37_79b9_7f4a_7c15);
    let max = opts.max_n.clamp(2, 64);
    for trial in 0..200u64 {
        let len = 2 + (rng.next_u64() % (max as u64 - 1)) as usize;
        let distinct = 1 + rng.next_u64() % 6;
        let mut v: Vec<i64> = (0..len).map(|_| (rng.next_u64() % distinct) as i64).collect();
        let ss = (rng.next_u64() % (len as u64 - 1)) as usize;
        let u = len - 1;
        let s1 = (rng.next_u64() % (ss as u64 + 1)) as usize;
        v[s1..=ss].sort_unstable();
        let sm = (s1 + ss) / 2;
        let before = v.clone();
        let pivot = v[sm];
        let calls = Cell::new(0usize);
        let j = partition_unsorted(&mut v, sm, ss, u, &mut |a: &i64, b: &i64| {
            calls.set(calls.get() + 1);
            order(a, b)
        });
        let fail = |detail: String| {
            move || Failure {
                check: "partition-postcondition",
                seed: opts.seed,
                n: len,
                k: None,
                dist: Some(format!("partition-trial:{trial}")),
                detail,
            }
        };
        let ok = (ss..=u).contains(&j)
            && calls.get() == u - ss
            && v[..=ss] == before[..=ss]
            && v[ss + 1..=j].iter().all(|&x| x < pivot)
            && v[j + 1..=u].iter().all(|&x| x >= pivot)
            && same_multiset(&v[ss + 1..], &before[ss + 1..]);
        ctx.check(ok, fail(format!("sm={sm} ss={ss} u={u} j={j} input={before:?} output={v:?}")));
        if !(ss..=u).contains(&j) {
            continue;
        }

        let parted = v.clone();
        move_sample(&mut v, sm, ss, j);
        let shift = j - ss;
        let ok = v[sm + shift..=j] == parted[sm..=ss]
            && v[s1..sm] == parted[s1..sm]
            && same_multiset(&v[sm..sm + shift], &parted[ss + 1..=j])
            && v[j + 1..] == parted[j + 1..];
        ctx.check(ok, move || Failure {
            check: "sample-move-postcondition",
            seed: opts.seed,
            n: len,
            k: None,
            dist: Some(format!("partition-trial:{trial}")),
            detail: format!("sm={sm} ss={ss} j={j} before={parted:?} after={v:?}"),
        });
    }
}

fn same_multiset(a: &[i64], b: &[i64]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// Each unsorted element meets at most `ceil(log2(sample + 1))` pivots drawn
/// from the sample before its partition is handed to the samplesort.
fn check_pivot_levels(ctx: &mut Ctx, opts: &VerifyOptions, order: Order) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(17));
    let config = SortConfig::default();
    for sample in [1usize, 2, 3, 4, 7, 8, 15, 31] {
        let total = sample + 4 * (sample + 1);
        let mut ranks: Vec<i64> = (0..total as i64).collect();
        for i in (1..total).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            ranks.swap(i, j);
        }
        // sample values even, unsorted values odd
        let mut v: Vec<i64> = ranks[..sample].iter().map(|r| 2 * r).collect();
        v.sort_unstable();
        v.extend(ranks[sample..].iter().map(|r| 2 * r + 1));
        let levels = std::cell::RefCell::new(std::collections::HashMap::<i64, usize>::new());
        leapfrog(&mut v, Region::new(0, sample, total), &config, &mut |a: &i64, b: &i64| {
            if b % 2 == 0 {
                *levels.borrow_mut().entry(*a).or_default() += 1;
            }
            order(a, b)
        });
        // ceil(log2(sample + 1))
        let bound = (usize::BITS - sample.leading_zeros()) as usize;
        let worst = levels.borrow().values().copied().max().unwrap_or(0);
        ctx.check(worst <= bound, || Failure {
            check: "pivot-levels",
            seed: opts.seed,
            n: total,
            k: Some(1),
            dist: Some(format!("sample:{sample}")),
            detail: format!("an element met {worst} sample pivots, bound {bound}"),
        });
    }
}

fn check_cost_model(ctx: &mut Ctx, opts: &VerifyOptions, configs: &[SortConfig], order: Order) {
    for config in configs {
        let k = config.k();
        let mut model = match CostModel::with_table(k) {
            Ok(m) => m,
            Err(_) => CostModel::new(k).expect("valid k"),
        };
        let has_table = model.table().is_some();

        // monotone on the integer grid up to max_n (capped) and on stage points
        let mut grid: Vec<u64> = (0..=opts.max_n.min(4096) as u64).collect();
        grid.extend(stage_points(k, opts.max_n as u64));
        grid.sort_unstable();
        grid.dedup();
        let mut prev = (0.0f64, 0.0f64);
        let mut bad = None;
        for &n in &grid {
            let w = model.worst_case_bound(n);
            let a = if has_table { model.avg_case_model(n).unwrap_or(0.0) } else { 0.0 };
            if bad.is_none() && (w < prev.0 || a < prev.1) {
                bad = Some(n);
            }
            prev = (w, a);
        }
        ctx.check(bad.is_none(), || Failure {
            check: "model-monotone",
            seed: opts.seed,
            n: bad.unwrap_or(0) as usize,
            k: Some(k),
            dist: None,
            detail: "cost model decreased".into(),
        });

        if k <= DOMINANCE_MAX_K {
            for n in stage_points(k, opts.max_n as u64) {
                let input: Vec<i64> = (0..n as i64).collect();
                let (_, m) = run_instrumented_by(&input, config, order, &mut ());
                let bound = model.worst_case_bound(n);
                ctx.check(m.comparisons as f64 <= bound, || Failure {
                    check: "worst-case-dominance",
                    seed: opts.seed,
                    n: n as usize,
                    k: Some(k),
                    dist: Some("sorted".into()),
                    detail: format!("measured {} > bound {bound}", m.comparisons),
                });
            }
        }

        if has_table {
            let table = model.table().expect("checked").clone();
            let fresh = ASmallTable::build(k).expect("table built once already");
            ctx.check(table == fresh, || Failure {
                check: "small-table",
                seed: opts.seed,
                n: config.multiplier(),
                k: Some(k),
                dist: None,
                detail: "table rebuild differs".into(),
            });
        }

        for n in 0..=ORACLE_MAX_N.min(opts.max_n) {
            let library = brute_force_avg(n, config).expect("n within limit");
            let independent = enumerate_mean(n, config, order);
            ctx.check(library == independent, || Failure {
                check: "oracle-agreement",
                seed: opts.seed,
                n,
                k: Some(k),
                dist: None,
                detail: format!("brute force {library} vs enumeration {independent}"),
            });
        }
    }
}

/// Mean comparisons over all orderings, enumerated by recursive swapping and
/// counted with a bare closure.
fn enumerate_mean(n: usize, config: &SortConfig, order: Order) -> Ratio<u64> {
    fn visit(perm: &mut Vec<i64>, at: usize, f: &mut dyn FnMut(&[i64])) {
        if at == perm.len() {
            f(perm);
            return;
        }
        for i in at..perm.len() {
            perm.swap(at, i);
            visit(perm, at + 1, f);
            perm.swap(at, i);
        }
    }
    let mut perm: Vec<i64> = (0..n as i64).collect();
    let mut sum = 0u64;
    let mut count = 0u64;
    visit(&mut perm, 0, &mut |p| {
        let mut v = p.to_vec();
        let mut calls = 0u64;
        lf_samplesort(&mut v, config, &mut |a: &i64, b: &i64| {
            calls += 1;
            order(a, b)
        });
        sum += calls;
        count += 1;
    });
    Ratio::new(sum, count)
}

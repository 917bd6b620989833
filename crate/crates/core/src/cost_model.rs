//! Worst-case and average-case comparison recurrences, and an exact
//! expected-cost oracle for small inputs.
//!
//! Both recurrences are stated for `n = s + (2^k - 1)(s + 1)`. Off those
//! points the split is taken as `s = max(1, floor((n - (2^k - 1)) / 2^k))`,
//! which reproduces the stage-point values exactly and lets the recursion
//! close over every `n`. Logarithms are base 2.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_rational::Ratio;

use crate::error::CostError;
use crate::instrument::run_instrumented;
use crate::sort::SortConfig;

/// Permutation enumeration stops here (8! = 40320 runs).
pub const MAX_BRUTE_FORCE_N: usize = 8;

/// Split point `s` used by both recurrences for size `n >= 2`.
pub fn split_point(n: u64, k: u32) -> u64 {
    let m = multiplier(k);
    (n.saturating_sub(m) >> k).max(1)
}

fn multiplier(k: u32) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Input sizes `2^(k j) - 1 <= max_n`, `j >= 1`, at which the schedule ends
/// with an empty remainder.
pub fn stage_points(k: u32, max_n: u64) -> Vec<u64> {
    let m = multiplier(k);
    let mut out = Vec::new();
    let mut n = m;
    while n <= max_n {
        out.push(n);
        // 2^k n + (2^k - 1)
        match n.checked_mul(m + 1).and_then(|x| x.checked_add(m)) {
            Some(next) => n = next,
            None => break,
        }
    }
    out
}

/// Exact expected comparison counts for every partition size `0..=2^k - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ASmallTable {
    k: u32,
    values: BTreeMap<usize, Ratio<u64>>,
}

impl ASmallTable {
    /// Builds the table by brute force; only possible while `2^k - 1` is
    /// within [`MAX_BRUTE_FORCE_N`].
    pub fn build(k: u32) -> Result<Self, CostError> {
        let config = SortConfig::new(k)?;
        let m = config.multiplier();
        if m > MAX_BRUTE_FORCE_N {
            return Err(CostError::TooLarge(m));
        }
        let values = (0..=m)
            .map(|p| brute_force_avg(p, &config).map(|v| (p, v)))
            .collect::<Result<_, _>>()?;
        Ok(ASmallTable { k, values })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn get(&self, p: usize) -> Option<Ratio<u64>> {
        self.values.get(&p).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Ratio<u64>)> + '_ {
        self.values.iter().map(|(&p, &v)| (p, v))
    }
}

/// Memoized evaluator for a fixed `k`.
#[derive(Debug, Clone)]
pub struct CostModel {
    k: u32,
    worst: HashMap<u64, f64>,
    avg: HashMap<u64, f64>,
    table: Option<ASmallTable>,
}

impl CostModel {
    pub fn new(k: u32) -> Result<Self, CostError> {
        SortConfig::new(k)?;
        Ok(CostModel {
            k,
            worst: HashMap::new(),
            avg: HashMap::new(),
            table: None,
        })
    }

    /// Model with a brute-forced small-size table, when `k` permits one.
    pub fn with_table(k: u32) -> Result<Self, CostError> {
        let mut model = Self::new(k)?;
        model.table = Some(ASmallTable::build(k)?);
        Ok(model)
    }

    pub fn set_table(&mut self, table: ASmallTable) {
        self.table = Some(table);
        self.avg.clear();
    }

    pub fn table(&self) -> Option<&ASmallTable> {
        self.table.as_ref()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `W(n) = W(s) + W(n - s) + (n - s) log2(s + 1)`, `W(0) = W(1) = 0`.
    pub fn worst_case_bound(&mut self, n: u64) -> f64 {
        let k = self.k;
        let memo = &mut self.worst;
        memo.insert(0, 0.0);
        memo.insert(1, 0.0);
        let mut pending = vec![n];
        while let Some(&x) = pending.last() {
            if memo.contains_key(&x) {
                pending.pop();
                continue;
            }
            let s = split_point(x, k);
            match (memo.get(&s), memo.get(&(x - s))) {
                (Some(&ws), Some(&wr)) => {
                    let r = (x - s) as f64;
                    memo.insert(x, ws + wr + r * ((s + 1) as f64).log2());
                    pending.pop();
                }
                (ws, _) => {
                    if ws.is_none() {
                        pending.push(s);
                    } else {
                        pending.push(x - s);
                    }
                }
            }
        }
        memo[&n]
    }

    /// `A(n) = A(s) + (2^k - 1)(s + 1) log2(s + 1) + (s + 1) A_small(2^k - 1)`,
    /// `A(0) = A(1) = 0`.
    ///
    /// This is a model assuming ideal median splits, not an exact expectation.
    pub fn avg_case_model(&mut self, n: u64) -> Result<f64, CostError> {
        let m = multiplier(self.k);
        let base = self
            .table
            .as_ref()
            .and_then(|t| t.get(m as usize))
            .ok_or(CostError::TableMissing(m as usize))?;
        let base = *base.numer() as f64 / *base.denom() as f64;

        let mut chain = Vec::new();
        let mut x = n;
        while x >= 2 && !self.avg.contains_key(&x) {
            chain.push(x);
            x = split_point(x, self.k);
        }
        let mut below = if x < 2 { 0.0 } else { self.avg[&x] };
        for &x in chain.iter().rev() {
            let s = split_point(x, self.k) as f64;
            let value = below + m as f64 * (s + 1.0) * (s + 1.0).log2() + (s + 1.0) * base;
            self.avg.insert(x, value);
            below = value;
        }
        Ok(if n < 2 { 0.0 } else { self.avg[&n] })
    }
}

pub fn worst_case_bound(n: u64, k: u32) -> Result<f64, CostError> {
    Ok(CostModel::new(k)?.worst_case_bound(n))
}

pub fn avg_case_model(n: u64, k: u32, table: &ASmallTable) -> Result<f64, CostError> {
    let mut model = CostModel::new(k)?;
    model.set_table(table.clone());
    model.avg_case_model(n)
}

/// Mean comparison count over all `n!` orderings of `n` distinct keys.
pub fn brute_force_avg(n: usize, config: &SortConfig) -> Result<Ratio<u64>, CostError> {
    if n > MAX_BRUTE_FORCE_N {
        return Err(CostError::TooLarge(n));
    }
    let mut total = 0u64;
    let mut count = 0u64;
    for perm in (0..n as i64).permutations(n) {
        total += run_instrumented(&perm, config).1.comparisons;
        count += 1;
    }
    Ok(Ratio::new(total, count))
}

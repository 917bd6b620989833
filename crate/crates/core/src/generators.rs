//! Seeded input generators.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! whose output stream is fixed across platforms and crate versions. Shuffles
//! are Fisher-Yates from the back, drawing the swap index as the high word of
//! `next_u64() * (i + 1)`.

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GenError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DistKind {
    /// A permutation of `0..n`.
    RandomPerm,
    /// `0, 1, ..., n-1`: every sample lies below every unsorted element.
    SortedAsc,
    /// `n-1, ..., 0`: every sample lies above every unsorted element.
    SortedDesc,
    /// `min(d, n)` distinct values, shuffled.
    FewUnique(u64),
    AllEqual,
}

impl fmt::Display for DistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistKind::RandomPerm => f.write_str("random"),
            DistKind::SortedAsc => f.write_str("sorted"),
            DistKind::SortedDesc => f.write_str("reversed"),
            DistKind::FewUnique(d) => write!(f, "fewunique:{d}"),
            DistKind::AllEqual => f.write_str("equal"),
        }
    }
}

impl FromStr for DistKind {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(DistKind::RandomPerm),
            "sorted" => Ok(DistKind::SortedAsc),
            "reversed" => Ok(DistKind::SortedDesc),
            "equal" => Ok(DistKind::AllEqual),
            _ => {
                let d = s
                    .strip_prefix("fewunique:")
                    .ok_or_else(|| GenError::UnknownDistribution(s.to_string()))?;
                let d: i128 = d.parse().map_err(|_| GenError::UnknownDistribution(s.to_string()))?;
                if d <= 0 {
                    return Err(GenError::NoDistinctValues);
                }
                let d = u64::try_from(d).map_err(|_| GenError::UnknownDistribution(s.to_string()))?;
                Ok(DistKind::FewUnique(d))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Distribution {
    pub kind: DistKind,
    pub n: usize,
    pub seed: u64,
}

impl Distribution {
    pub fn new(kind: DistKind, n: usize, seed: u64) -> Self {
        Distribution { kind, n, seed }
    }
}

pub fn generate(dist: &Distribution) -> Result<Vec<i64>, GenError> {
    let n = dist.n;
    let mut rng = ChaCha8Rng::seed_from_u64(dist.seed);
    let out = match dist.kind {
        DistKind::RandomPerm => {
            let mut v: Vec<i64> = (0..n as i64).collect();
            shuffle(&mut v, &mut rng);
            v
        }
        DistKind::SortedAsc => (0..n as i64).collect(),
        DistKind::SortedDesc => (0..n as i64).rev().collect(),
        DistKind::FewUnique(0) => return Err(GenError::NoDistinctValues),
        DistKind::FewUnique(d) => {
            let mut v: Vec<i64> = (0..n as u64).map(|i| (i % d) as i64).collect();
            shuffle(&mut v, &mut rng);
            v
        }
        DistKind::AllEqual => vec![0; n],
    };
    Ok(out)
}

fn shuffle<T>(v: &mut [T], rng: &mut ChaCha8Rng) {
    for i in (1..v.len()).rev() {
        let bound = (i + 1) as u128;
        let j = ((rng.next_u64() as u128 * bound) >> 64) as usize;
        v.swap(i, j);
    }
}

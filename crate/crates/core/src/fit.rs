//! Growth-rate fitting over benchmark rows.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::report::{Algo, BenchReportRow};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SeriesKey {
    pub algo: Algo,
    pub k: Option<u32>,
    pub dist: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitPoint {
    pub n: usize,
    pub trials: usize,
    pub mean_comparisons: f64,
    /// comparisons / (n log2 n)
    pub per_n_log_n: f64,
    /// comparisons / (n log2^2 n)
    pub per_n_log2_n: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesFit {
    pub key: SeriesKey,
    pub points: Vec<FitPoint>,
    /// Least-squares slope of comparisons/n against log2 n.
    pub slope_log: Option<f64>,
    /// Least-squares slope of comparisons/n against log2^2 n.
    pub slope_log2: Option<f64>,
}

/// Ordinary least-squares slope; `None` unless at least two distinct `x`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx <= f64::EPSILON * mx.abs().max(1.0) {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

/// Mean comparisons per `n` for each `(algo, k, dist)` series. Sizes below 2
/// have no meaningful `log2 n` and are dropped.
pub fn fit_rows(rows: &[BenchReportRow]) -> Vec<SeriesFit> {
    let mut series: BTreeMap<SeriesKey, BTreeMap<usize, Vec<u64>>> = BTreeMap::new();
    for row in rows.iter().filter(|r| r.n >= 2) {
        let key = SeriesKey {
            algo: row.algo,
            k: row.k,
            dist: row.dist.clone(),
        };
        series.entry(key).or_default().entry(row.n).or_default().push(row.comparisons);
    }

    series
        .into_iter()
        .map(|(key, by_n)| {
            let points: Vec<FitPoint> = by_n
                .into_iter()
                .map(|(n, counts)| {
                    let mean = counts.iter().map(|&c| c as f64).sum::<f64>() / counts.len() as f64;
                    let lg = (n as f64).log2();
                    FitPoint {
                        n,
                        trials: counts.len(),
                        mean_comparisons: mean,
                        per_n_log_n: mean / (n as f64 * lg),
                        per_n_log2_n: mean / (n as f64 * lg * lg),
                    }
                })
                .collect();
            let lg: Vec<f64> = points.iter().map(|p| (p.n as f64).log2()).collect();
            let lg2: Vec<f64> = lg.iter().map(|l| l * l).collect();
            let per_n: Vec<f64> = points.iter().map(|p| p.mean_comparisons / p.n as f64).collect();
            SeriesFit {
                slope_log: least_squares_slope(&lg, &per_n),
                slope_log2: least_squares_slope(&lg2, &per_n),
                key,
                points,
            }
        })
        .collect()
}

pub fn render(fits: &[SeriesFit]) -> String {
    let mut out = String::new();
    for fit in fits {
        let k = fit.key.k.map_or_else(|| "-".to_string(), |k| k.to_string());
        writeln!(out, "series algo={} k={} dist={}", fit.key.algo, k, fit.key.dist).unwrap();
        writeln!(out, "  n trials mean_comparisons per_n_log2n per_n_log2sq_n").unwrap();
        for p in &fit.points {
            writeln!(
                out,
                "  {} {} {:.3} {:.6} {:.6}",
                p.n, p.trials, p.mean_comparisons, p.per_n_log_n, p.per_n_log2_n
            )
            .unwrap();
        }
        let slope = |s: Option<f64>| s.map_or_else(|| "undefined".to_string(), |v| format!("{v:.6}"));
        writeln!(out, "  slope_vs_log2n {}", slope(fit.slope_log)).unwrap();
        writeln!(out, "  slope_vs_log2sq_n {}", slope(fit.slope_log2)).unwrap();
    }
    out
}

//! Acceptance criteria. Runs as a plain binary (no libtest harness) and prints
//! one PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::cell::Cell;
use std::process::Command;
use std::time::{Duration, Instant};

use lfsort_core::cost_model::{brute_force_avg, stage_points, worst_case_bound, CostModel};
use lfsort_core::generators::{generate, DistKind, Distribution};
use lfsort_core::instrument::{run_instrumented, run_instrumented_by, PartitionLog};
use lfsort_core::{
    compute_schedule, leapfrog, lf_samplesort, move_sample, partition_unsorted, quicksort_ref, Region, SortConfig,
    Stage,
};
use num_rational::Ratio;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cfg(k: u32) -> SortConfig {
    SortConfig::new(k).unwrap()
}

fn comparisons(input: &[i64], k: u32) -> u64 {
    run_instrumented(input, &cfg(k)).1.comparisons
}

const AC1_LIMIT: Duration = Duration::from_secs(120);
const AC4_LIMIT: Duration = Duration::from_secs(300);
const AC4_MIN_RATIO: f64 = 0.5;
const AC6_MAX_REL_DIFF: f64 = 0.10;
const AC6_MAX_RATIO: f64 = 2.0;
const AC6_TRIALS: u64 = 10;
// mean comparisons/(n log2 n) over seeds 0..10, frozen from the first run
const AC6_GOLDEN: [(usize, f64); 2] = [(1 << 14, 0.910732160296), (1 << 16, 0.921803379059)];
const AC6_GOLDEN_TOL: f64 = 1e-9;
const AC7_BAND: f64 = 1.5;
const AC8_INPUTS: u64 = 1000;

fn ac1_oracle_correctness() -> Outcome {
    let start = Instant::now();
    let mut sizes: Vec<usize> = (0..=64).collect();
    sizes.extend([1 << 7, 1 << 10, 1 << 14]);
    let dists = ["random", "sorted", "reversed", "fewunique:5", "equal"];
    let mut runs = 0;
    for k in 1..=4 {
        for d in dists {
            let kind: DistKind = d.parse().unwrap();
            for &n in &sizes {
                let input = generate(&Distribution::new(kind, n, 1234 + n as u64)).unwrap();
                let mut expected = input.clone();
                expected.sort();
                let mut out = input.clone();
                lfsort_core::sort(&mut out, &cfg(k));
                ensure(out == expected, || format!("k={k} dist={d} n={n}: output differs from platform sort"))?;
                runs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < AC1_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{runs} runs match the platform sort in {elapsed:.2?}"))
}

fn ac2_schedule_fidelity() -> Outcome {
    let table1: Vec<(usize, usize)> = vec![
        (1, 2),
        (3, 4),
        (7, 8),
        (15, 16),
        (31, 32),
        (63, 64),
        (127, 128),
        (255, 256),
    ];
    let table2: [(u32, Vec<(usize, usize)>); 3] = [
        (2, vec![(1, 6), (7, 24), (31, 96), (127, 384), (511, 1536)]),
        (3, vec![(1, 14), (15, 112), (127, 896), (1023, 7168), (8191, 57344)]),
        (4, vec![(1, 30), (31, 480), (511, 7680), (8191, 122880), (131071, 1966080)]),
    ];
    let mut checked = 0;
    for (k, rows) in std::iter::once((1, table1)).chain(table2) {
        let (s, r) = *rows.last().unwrap();
        let n = s + r;
        let schedule = compute_schedule(n, &cfg(k));
        let mut expected: Vec<Stage> = rows.iter().map(|&(s, r)| Stage::new(s, r)).collect();
        expected.push(Stage::new(n, 0));
        ensure(schedule == expected, || format!("k={k}: {schedule:?}"))?;
        checked += rows.len();
    }
    Ok(format!("{checked} table rows reproduced exactly"))
}

fn ac3_exact_small_cases() -> Outcome {
    let k1 = cfg(1);
    let b3 = brute_force_avg(3, &k1).map_err(|e| e.to_string())?;
    let b2 = brute_force_avg(2, &k1).map_err(|e| e.to_string())?;
    ensure(b3 == Ratio::new(8, 3), || format!("brute_force_avg(3) = {b3}"))?;
    ensure(b2 == Ratio::from_integer(1), || format!("brute_force_avg(2) = {b2}"))?;
    let (out, m) = run_instrumented(&[1i64, 2, 3], &k1);
    ensure(out == [1, 2, 3] && m.comparisons == 3, || format!("[1,2,3]: {} comparisons", m.comparisons))?;

    // remaining hand traces
    let sorted7: Vec<i64> = (0..7).collect();
    let c7 = comparisons(&sorted7, 1);
    ensure(c7 == 16, || format!("sorted n=7: {c7} comparisons"))?;

    let mut v = vec![3i64, 7, 9, 5, 1, 8, 2];
    let j = partition_unsorted(&mut v, 1, 2, 6, &mut |a: &i64, b: &i64| a < b);
    ensure(j == 5 && v == [3, 7, 9, 5, 1, 2, 8], || format!("partition: j={j} {v:?}"))?;
    move_sample(&mut v, 1, 2, 5);
    ensure(v == [3, 1, 2, 5, 7, 9, 8], || format!("move_sample: {v:?}"))?;

    let mut v = vec![3i64, 1, 2];
    leapfrog(&mut v, Region::new(0, 1, 3), &k1, &mut |a: &i64, b: &i64| a < b);
    ensure(v == [1, 2, 3], || format!("leapfrog: {v:?}"))?;

    let calls = Cell::new(0);
    let mut v = vec![2i64, 1];
    leapfrog(&mut v, Region::new(0, 0, 2), &k1, &mut |a: &i64, b: &i64| {
        calls.set(calls.get() + 1);
        a < b
    });
    ensure(v == [1, 2] && calls.get() == 1, || "empty-sample leapfrog".into())?;

    let w3 = worst_case_bound(3, 1).unwrap();
    let w7 = worst_case_bound(7, 1).unwrap();
    ensure(w3 == 3.0 && w7 == 17.0, || format!("W(3)={w3} W(7)={w7}"))?;
    let mut model = CostModel::with_table(1).map_err(|e| e.to_string())?;
    let a3 = model.avg_case_model(3).unwrap();
    let a7 = model.avg_case_model(7).unwrap();
    ensure(a3 == 2.0 && a7 == 10.0, || format!("A(3)={a3} A(7)={a7}"))?;

    Ok("8/3, 1, 3 comparisons; sorted n=7 -> 16; partition/move/leapfrog traces; W and A examples".into())
}

fn ac4_worst_case_dominance() -> Outcome {
    let start = Instant::now();
    let mut lowest = f64::INFINITY;
    let mut points = 0;
    let mut detail = Vec::new();
    for k in 1..=3 {
        let mut model = CostModel::new(k).unwrap();
        for n in stage_points(k, 1 << 20) {
            let input = generate(&Distribution::new(DistKind::SortedAsc, n as usize, 0)).unwrap();
            let measured = comparisons(&input, k) as f64;
            let bound = model.worst_case_bound(n);
            ensure(measured <= bound, || format!("k={k} n={n}: measured {measured} > bound {bound}"))?;
            if bound > 0.0 {
                let ratio = measured / bound;
                ensure(ratio >= AC4_MIN_RATIO, || format!("k={k} n={n}: ratio {ratio:.4} below {AC4_MIN_RATIO}"))?;
                lowest = lowest.min(ratio);
                detail.push(format!("k{k}/n{n}:{ratio:.3}"));
            }
            points += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < AC4_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{points} stage points dominated, min measured/bound {lowest:.3} in {elapsed:.2?} [{}]",
        detail.join(" ")
    ))
}

fn ac5_worst_case_trigger() -> Outcome {
    let mut sizes: Vec<usize> = (0..=300).collect();
    let mut p = 512;
    while p <= 1 << 16 {
        sizes.extend([p - 1, p, p + 1]);
        p *= 2;
    }
    for k in 1..=4 {
        sizes.extend(stage_points(k, 1 << 16).into_iter().map(|n| n as usize));
    }
    sizes.retain(|&n| n <= 1 << 16);
    sizes.sort_unstable();
    sizes.dedup();
    let mut passes = 0usize;
    for k in 1..=4 {
        for &n in &sizes {
            let input = generate(&Distribution::new(DistKind::SortedAsc, n, 0)).unwrap();
            let mut log = PartitionLog::default();
            run_instrumented_by(&input, &cfg(k), |a: &i64, b: &i64| a < b, &mut log);
            if let Some(e) = log.events.iter().find(|e| e.j != e.ss) {
                return Err(format!("k={k} n={n}: partition returned j={} with ss={}", e.j, e.ss));
            }
            passes += log.events.len();
        }
    }
    Ok(format!("{passes} partition passes over {} sizes x 4 k, all one-sided", sizes.len()))
}

fn mean_ratio_random(n: usize, trials: u64) -> f64 {
    let lg = (n as f64).log2();
    let total: f64 = (0..trials)
        .map(|seed| {
            let input = generate(&Distribution::new(DistKind::RandomPerm, n, seed)).unwrap();
            comparisons(&input, 1) as f64
        })
        .sum();
    total / trials as f64 / (n as f64 * lg)
}

fn ac6_average_growth() -> Outcome {
    let small = mean_ratio_random(1 << 14, AC6_TRIALS);
    let large = mean_ratio_random(1 << 16, AC6_TRIALS);
    let rel = (large - small).abs() / small;
    ensure(rel < AC6_MAX_REL_DIFF, || format!("ratios {small:.4} vs {large:.4} differ by {rel:.3}"))?;
    ensure(small < AC6_MAX_RATIO && large < AC6_MAX_RATIO, || format!("ratios {small:.4}, {large:.4}"))?;
    for ((n, golden), got) in AC6_GOLDEN.iter().zip([small, large]) {
        ensure((got - golden).abs() <= AC6_GOLDEN_TOL, || format!("n={n}: ratio {got:.12} vs golden {golden:.12}"))?;
    }
    Ok(format!("c/(n log2 n) = {small:.4} at 2^14, {large:.4} at 2^16 (rel diff {rel:.4})"))
}

fn ac7_worst_growth() -> Outcome {
    let mut per_log = Vec::new();
    let mut per_log2 = Vec::new();
    for e in [12u32, 14, 16] {
        let n = 1usize << e;
        let input = generate(&Distribution::new(DistKind::SortedAsc, n, 0)).unwrap();
        let c = comparisons(&input, 1) as f64;
        let lg = e as f64;
        per_log.push(c / (n as f64 * lg));
        per_log2.push(c / (n as f64 * lg * lg));
    }
    let hi = per_log2.iter().cloned().fold(f64::MIN, f64::max);
    let lo = per_log2.iter().cloned().fold(f64::MAX, f64::min);
    ensure(hi / lo <= AC7_BAND, || format!("c/(n log2^2 n) = {per_log2:?} spans {:.3}", hi / lo))?;
    ensure(per_log.windows(2).all(|w| w[1] > w[0]), || format!("c/(n log2 n) = {per_log:?} not increasing"))?;
    Ok(format!("c/(n log2 n) = {per_log:.4?} increasing; c/(n log2^2 n) = {per_log2:.4?} within {:.3}x", hi / lo))
}

fn ac8_quicksort_degeneration() -> Outcome {
    for i in 0..AC8_INPUTS {
        let n = (i * 7919 % 257) as usize;
        let kind = match i % 4 {
            0 | 1 => DistKind::RandomPerm,
            2 => DistKind::FewUnique(1 + i % 9),
            _ => DistKind::SortedDesc,
        };
        let input = generate(&Distribution::new(kind, n, i)).unwrap();
        let config = SortConfig::with_multiplier_at_least(n).unwrap();
        let lf = Cell::new(0u64);
        let mut a = input.clone();
        lf_samplesort(&mut a, &config, &mut |x: &i64, y: &i64| {
            lf.set(lf.get() + 1);
            x < y
        });
        let qs = Cell::new(0u64);
        let mut b = input.clone();
        quicksort_ref(&mut b, &mut |x: &i64, y: &i64| {
            qs.set(qs.get() + 1);
            x < y
        });
        ensure(lf.get() == qs.get() && a == b, || {
            format!("input {i} (n={n}, {kind}, k={}): {} vs {}", config.k(), lf.get(), qs.get())
        })?;
    }
    Ok(format!("{AC8_INPUTS} inputs, identical comparison counts"))
}

fn strip_wall_ns(json: &str) -> Result<String, String> {
    let mut value: serde_json::Value = serde_json::from_str(json).map_err(|e| e.to_string())?;
    for row in value["rows"].as_array_mut().ok_or("no rows")? {
        row.as_object_mut().ok_or("row not an object")?.remove("wall_ns");
    }
    Ok(value.to_string())
}

fn ac9_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str, format: &str| -> Result<String, String> {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_lfsort"))
            .args([
                "bench",
                "--k",
                "1,2,3",
                "--sizes",
                "0,1,100,4096",
                "--dist",
                "random,sorted,reversed,fewunique:5,equal",
                "--trials",
                "3",
                "--seed",
                "99",
                "--algos",
                "lfsort,platform_sort,quicksort_ref",
                "--format",
                format,
                "--out",
            ])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || format!("bench exited with {status}"))?;
        std::fs::read_to_string(&path).map_err(|e| e.to_string())
    };
    let a = strip_wall_ns(&run("a.json", "json")?)?;
    let b = strip_wall_ns(&run("b.json", "json")?)?;
    ensure(a == b, || "JSON reports differ after removing wall_ns".into())?;

    let drop_last = |s: &str| -> String { s.lines().map(|l| l.rsplit_once(',').unwrap().0).collect::<Vec<_>>().join("\n") };
    let c = drop_last(&run("a.csv", "csv")?);
    let d = drop_last(&run("b.csv", "csv")?);
    ensure(c == d, || "CSV reports differ after removing wall_ns".into())?;
    Ok(format!("JSON ({} bytes) and CSV ({} lines) reports identical modulo wall_ns", a.len(), c.lines().count()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("AC1 oracle correctness", ac1_oracle_correctness),
        ("AC2 schedule fidelity", ac2_schedule_fidelity),
        ("AC3 exact small-case oracle", ac3_exact_small_cases),
        ("AC4 worst-case dominance", ac4_worst_case_dominance),
        ("AC5 worst-case trigger", ac5_worst_case_trigger),
        ("AC6 average-case growth", ac6_average_growth),
        ("AC7 worst-case growth", ac7_worst_growth),
        ("AC8 quicksort degeneration", ac8_quicksort_degeneration),
        ("AC9 determinism", ac9_determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

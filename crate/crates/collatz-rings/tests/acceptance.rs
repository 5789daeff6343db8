//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with --nocapture). Every tolerance and bound is pinned
//! here; criteria with a stated runtime budget are timed.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use collatz_rings::census;
use collatz_rings::dyadic::{self, DyadicRational};
use collatz_rings::parity;
use collatz_rings::poly;
use collatz_rings::ring::make_ring;
use collatz_rings::series;
use collatz_rings::verify::{run_suite, SuiteReport};
use collatz_rings::Poly;

const SEED: u64 = 0x5eed;
const MINUTE: Duration = Duration::from_secs(60);

fn bu(n: u64) -> BigUint {
    BigUint::from(n)
}

fn assert_suite(n: u32, label: &str, report: &SuiteReport, elapsed: Option<Duration>) {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    match elapsed {
        Some(e) => println!("criterion {n} ({label}): {status} in {e:.2?}"),
        None => println!("criterion {n} ({label}): {status}"),
    }
    for check in &report.checks {
        assert!(
            check.passed,
            "criterion {n} ({label}) failed at '{}': {}",
            check.name, check.detail
        );
    }
}

#[test]
fn criterion_01_fq_cycle_counts() {
    let start = Instant::now();
    let report = run_suite("fq-census", SEED).unwrap();
    let elapsed = start.elapsed();
    assert_suite(1, "finite-field cycle counts", &report, Some(elapsed));
    assert!(elapsed < MINUTE, "criterion 1 exceeded one minute: {elapsed:?}");

    // pinned values
    let f3 = make_ring("F3").unwrap();
    let table = census::brute_force_census(&f3, 3).unwrap();
    assert_eq!(table.counts.get(&2), Some(&2));
    assert_eq!(table.counts.get(&6), Some(&2));
    let f2 = make_ring("F2").unwrap();
    let table = census::brute_force_census(&f2, 6).unwrap();
    assert_eq!(table.counts.len(), 2); // only (0) and (1, x)
    assert_eq!(table.counts.get(&1), Some(&1));
    assert_eq!(table.counts.get(&2), Some(&1));
    let matrix = census::matrix_census(&f3, 2).unwrap();
    assert_eq!(matrix.counts.get(&18), Some(&56)); // (2^9 - 2^3)/9
}

#[test]
fn criterion_02_period_law() {
    let report = run_suite("period-law", SEED).unwrap();
    assert_suite(2, "period divides 2K(deg)", &report, None);
}

#[test]
fn criterion_03_criterion_equivalence() {
    let start = Instant::now();
    let report = run_suite("criterion-equivalence", SEED).unwrap();
    let elapsed = start.elapsed();
    assert_suite(3, "criterion = orbit periodicity", &report, Some(elapsed));
    assert!(elapsed < MINUTE, "criterion 3 exceeded one minute: {elapsed:?}");
}

#[test]
fn criterion_04_preperiod_bound() {
    let report = run_suite("preperiod-bound", SEED).unwrap();
    assert_suite(4, "field pre-period bound", &report, None);
}

#[test]
fn criterion_05_valuation_suite() {
    let start = Instant::now();
    let report = run_suite("kummer", SEED).unwrap();
    let elapsed = start.elapsed();
    assert_suite(5, "valuation suite", &report, Some(elapsed));
    assert!(elapsed < MINUTE, "criterion 5 exceeded one minute: {elapsed:?}");
}

#[test]
fn criterion_06_series_census() {
    let start = Instant::now();
    let report = run_suite("series-census", SEED).unwrap();
    let elapsed = start.elapsed();
    assert_suite(6, "series census", &report, Some(elapsed));
    assert!(elapsed < MINUTE, "criterion 6 exceeded one minute: {elapsed:?}");

    // pinned: q=4, n=3
    let z4 = make_ring("Z/4").unwrap();
    let (omega, cycles) = series::omega_census(&z4, 3).unwrap();
    assert_eq!(omega, bu(10));
    assert_eq!(cycles.len(), 3);
}

#[test]
fn criterion_07_z2_cycles() {
    let start = Instant::now();
    let report = run_suite("z2-cycles", SEED).unwrap();
    let elapsed = start.elapsed();
    assert_suite(7, "2-adic cycle table", &report, Some(elapsed));
    assert!(elapsed < MINUTE, "criterion 7 exceeded one minute: {elapsed:?}");

    // frozen table: counts and literal cycles for n = 1..5
    let counts: Vec<u64> = (1..=5)
        .map(|n| u64::try_from(&dyadic::z2_cycle_count(n).unwrap()).unwrap())
        .collect();
    assert_eq!(counts, vec![1, 1, 1, 1, 2]);

    let literal = |texts: &[&str]| -> Vec<DyadicRational> {
        texts.iter().map(|t| DyadicRational::parse(t).unwrap()).collect()
    };
    let same_cycle = |a: &[DyadicRational], b: &[DyadicRational]| {
        a.len() == b.len()
            && (0..a.len()).any(|r| (0..a.len()).all(|i| a[i] == b[(i + r) % b.len()]))
    };
    let expected: Vec<(usize, Vec<Vec<DyadicRational>>)> = vec![
        (1, vec![literal(&["0"])]),
        (2, vec![literal(&["-1", "-2"])]),
        (3, vec![literal(&["1", "4", "2"])]),
        (4, vec![literal(&["1/5", "8/5", "4/5", "2/5"])]),
        (5, vec![
            literal(&["-10", "-5", "-14", "-7", "-20"]),
            literal(&["8/13", "4/13", "2/13", "1/13", "16/13"]),
        ]),
    ];
    for (n, want) in expected {
        let got = dyadic::enumerate_z2_cycles(n).unwrap();
        assert_eq!(got.len(), want.len(), "cycle count at n={n}");
        for w in &want {
            assert!(
                got.iter().any(|g| same_cycle(g, w)),
                "missing cycle {w:?} at n={n}"
            );
        }
    }
}

#[test]
fn criterion_08_construction_roundtrips() {
    let report = run_suite("roundtrip", SEED).unwrap();
    assert_suite(8, "construction round-trips", &report, None);
}

#[test]
fn criterion_09_asymptotics() {
    let report = run_suite("asymptotics", SEED).unwrap();
    assert_suite(9, "growth-rate sanity", &report, None);

    // |Z_n n / alpha^n - 1| <= 0.01 on the stated grid, <= 0.001 at the pin
    for q in [2u64, 5] {
        for n in 40..=60 {
            let r = parity::asymptotic_ratio(q, n).unwrap();
            assert!((r - 1.0).abs() <= 0.01, "q={q} n={n} ratio {r}");
        }
    }
    let r = parity::asymptotic_ratio(2, 60).unwrap();
    assert!((r - 1.0).abs() <= 0.001, "q=2 n=60 ratio {r}");
}

#[test]
fn criterion_10_infinite_ring() {
    let report = run_suite("infinite-ring", SEED).unwrap();
    assert_suite(10, "infinite positive-characteristic ring", &report, None);

    // pinned: t x + (t+1) over F2[t]
    let f2t = make_ring("F2[t]").unwrap();
    let f = Poly::parse(&f2t, "[[1,1],[0,1]]").unwrap();
    assert!(poly::is_periodic(&f).unwrap());
    assert_eq!(poly::exact_period(&f).unwrap(), 4);
    assert_eq!(poly::period_divisor_bound(&f).unwrap(), bu(4));
}

//! Named verification suites: each one cross-checks a closed-form claim
//! against an independent route (brute-force enumeration, exhaustive scan,
//! or direct big-integer computation) and reports per-check results.

use crate::error::{Error, Result};

/// One named check inside a suite.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

/// All suite names, in the order `run_all` executes them.
pub const SUITES: &[&str] = &[
    "kummer",
    "ring-axioms",
    "poly-laws",
    "criterion-equivalence",
    "period-law",
    "preperiod-bound",
    "fq-census",
    "parity-counts",
    "series-census",
    "series-soundness",
    "roundtrip",
    "z2-cycles",
    "asymptotics",
    "infinite-ring",
];

/// Run one suite by name. The seed steers sampled (not exhaustive) checks.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    match name {
        "kummer" => Ok(suites::kummer(seed)),
        "ring-axioms" => Ok(suites::ring_axioms(seed)),
        "poly-laws" => Ok(suites::poly_laws(seed)),
        "criterion-equivalence" => Ok(suites::criterion_equivalence()),
        "period-law" => Ok(suites::period_law()),
        "preperiod-bound" => Ok(suites::preperiod_bound()),
        "fq-census" => Ok(suites::fq_census()),
        "parity-counts" => Ok(suites::parity_counts()),
        "series-census" => Ok(suites::series_census()),
        "series-soundness" => Ok(suites::series_soundness(seed)),
        "roundtrip" => Ok(suites::roundtrip()),
        "z2-cycles" => Ok(suites::z2_cycles()),
        "asymptotics" => Ok(suites::asymptotics()),
        "infinite-ring" => Ok(suites::infinite_ring(seed)),
        _ => Err(Error::Precondition(format!("unknown suite: {name}"))),
    }
}

/// Run every suite.
pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .map(|s| run_suite(s, seed).expect("listed suites exist"))
        .collect()
}

/// SplitMix64: deterministic, seedable, no external dependency.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, bound).
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        self.next_u64() % bound
    }
}

mod suites;

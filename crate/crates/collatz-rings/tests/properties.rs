//! Property suites that go beyond the acceptance criteria: ring axioms,
//! degree/parity laws, the parity-count identities, and series
//! representation soundness.

use collatz_rings::verify::{run_suite, SUITES};

fn assert_suite(name: &str) {
    let report = run_suite(name, 0x5eed).unwrap();
    for check in &report.checks {
        assert!(
            check.passed,
            "suite {name} failed at '{}': {}",
            check.name, check.detail
        );
    }
}

#[test]
fn ring_axioms_hold() {
    assert_suite("ring-axioms");
}

#[test]
fn poly_degree_and_parity_laws_hold() {
    assert_suite("poly-laws");
}

#[test]
fn parity_count_identities_hold() {
    assert_suite("parity-counts");
}

#[test]
fn series_representation_is_sound() {
    assert_suite("series-soundness");
}

#[test]
fn every_listed_suite_runs() {
    for name in SUITES {
        let report = run_suite(name, 1).unwrap();
        assert!(!report.checks.is_empty(), "suite {name} reported nothing");
    }
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(run_suite("nosuchsuite", 0).is_err());
}

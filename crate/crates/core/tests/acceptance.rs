//! The eleven acceptance criteria, one test each, each printing a pass/fail line.
//!
//! Run with `cargo test -p tensorcat --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use tensorcat::selftest::{run_criterion, SelftestConfig, CRITERIA};

fn criterion(id: usize, budget_secs: u64) {
    let cfg = SelftestConfig::default();
    let start = Instant::now();
    let outcome = run_criterion(id, &cfg);
    let elapsed = start.elapsed();
    let title = CRITERIA[id - 1].1;
    let status = if outcome.passed() { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} {status} {title} ({:.2} s)", elapsed.as_secs_f64());
    if let Some(e) = &outcome.error {
        println!("    error: {e}");
    }
    for c in outcome.report.failures() {
        println!("    {} (residual {:e}, threshold {:e})", c.name, c.residual, c.threshold);
    }
    assert!(outcome.error.is_none(), "criterion {id} aborted: {:?}", outcome.error);
    assert!(!outcome.report.checks.is_empty(), "criterion {id} ran no checks");
    let failed: Vec<&str> = outcome.report.failures().iter().map(|c| c.name.as_str()).collect();
    assert!(failed.is_empty(), "criterion {id} failed: {failed:?}");
    assert!(elapsed < Duration::from_secs(budget_secs), "criterion {id} took {elapsed:?}");
}

#[test]
fn criterion_01_conjugate_equations() {
    criterion(1, 5);
}

#[test]
fn criterion_02_dimension_calculus() {
    criterion(2, 5);
}

#[test]
fn criterion_03_frobenius_reciprocity() {
    criterion(3, 10);
}

#[test]
fn criterion_04_traces_and_expectations() {
    criterion(4, 30);
}

#[test]
fn criterion_05_markov_and_basic_construction() {
    criterion(5, 60);
}

#[test]
fn criterion_06_jones_relations() {
    criterion(6, 60);
}

#[test]
fn criterion_07_standard_invariant() {
    criterion(7, 60);
}

#[test]
fn criterion_08_principal_graph_and_periodicity() {
    criterion(8, 120);
}

#[test]
fn criterion_09_fixed_point_model() {
    criterion(9, 60);
}

#[test]
fn criterion_10_bimodule_maps() {
    criterion(10, 120);
}

#[test]
fn criterion_11_determinism() {
    criterion(11, 600);
}

//! Acceptance gate: runs the full seeded verification battery and
//! requires every check to pass at its pinned tolerance, printing one
//! pass/fail line per check.
//!
//! The thirteen criteria covered, with their tolerances:
//!
//!  1. representation equivalence (Askey–Wilson, dual Hahn), 1e-10
//!  2. Askey–Wilson parameter symmetry over all 24 permutations, 1e-10
//!  3. discrete Gram matrices, five families × q ∈ {0.3,0.5,0.7}, 1e-8
//!  4. total-mass bilateral summation vs closed product, 1e-10
//!  5. continuous Hermite orthogonality at q = 0.5, 1e-8
//!  6. three-way J(α|q) agreement, α ∈ {1,2} × q ∈ {0.3,0.5}, 1e-9
//!  7. q-beta integral vs closed form, α ∈ {1,1.5}, 1e-8
//!  8. real-line vs unit-interval correspondence, five families, 1e-7
//!  9. beta integral: Dougall 1e-9, quadrature 1e-4, sin⁴ case 1e-6
//! 10. Fourier pair at three (a,t) points, 1e-6
//! 11. T-constant probe at q = 0.999, 5e-3
//! 12. q-gamma classical limit at q = 0.999, 5e-3
//! 13. limit chain with h = 1e-6 across all four family steps, 1e-4

use qaskey_cli::suite::{registry, run_suite};

#[test]
fn acceptance_battery() {
    let report = run_suite(42, None, "acceptance --seed 42");

    for check in &report.checks {
        println!(
            "{} {:<44} defect {:>12.5e}  tol {:>9.1e}",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.defect,
            check.tol,
        );
    }
    println!(
        "{}/{} checks passed, worst defect {:.5e}, wall time {:.2}s",
        report.passed(),
        report.total(),
        report.worst_defect(),
        report.wall_time.as_secs_f64()
    );

    let failures: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
    assert!(
        failures.is_empty(),
        "{} acceptance checks failed: {:?}",
        failures.len(),
        failures.iter().map(|c| (&c.name, c.defect, c.tol)).collect::<Vec<_>>()
    );

    // every criterion contributed at least one record
    assert!(report.total() >= registry().len());
}

#[test]
fn acceptance_is_deterministic() {
    // identical seed ⇒ byte-identical serialized report
    let a = run_suite(7, Some("t-constant"), "suite --seed 7 --only t-constant");
    let b = run_suite(7, Some("t-constant"), "suite --seed 7 --only t-constant");
    assert_eq!(a.to_json(), b.to_json());
    // a different seed still passes but may differ in sampled inputs
    let c = run_suite(8, Some("total-mass"), "suite --seed 8 --only total-mass");
    assert!(c.all_passed());
}

//! Acceptance gate: the full verification suite, one line per check.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! PASS/FAIL line for every check even when all of them pass.

use dirac_cylinder::verify::{run_suite, Suite};

#[test]
fn all_verification_checks_pass() {
    let outcomes = run_suite(Suite::All);
    for check in &outcomes {
        println!("{check}");
    }
    assert_eq!(outcomes.len(), 9, "the full suite runs nine checks");
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} {} — {}", c.id, c.name, c.details))
        .collect();
    assert!(failed.is_empty(), "failed checks:\n{}", failed.join("\n"));
}

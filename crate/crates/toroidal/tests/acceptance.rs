//! Acceptance gate: runs every verification criterion exactly (tolerance
//! zero) and prints one pass/fail line per check.

use toroidal::verify::{run_all, VerifyOptions};

#[test]
fn acceptance_suite() {
    let opts = VerifyOptions::default();
    let checks = run_all(&opts).expect("verification suite failed to run");
    let mut all = true;
    for c in &checks {
        println!(
            "{} {:<26} {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
        all &= c.passed;
    }
    assert!(all, "at least one acceptance check failed");
}

//! All fourteen reproducibility criteria at their tolerances and time limits.
//! Prints one PASS/FAIL line per criterion and fails if any criterion fails.

use pbtlab::suite::{check_ids, run_check, DEFAULT_SEED};

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for id in check_ids() {
        let r = run_check(id, DEFAULT_SEED).expect("known id");
        println!("{}", r.line());
        if !r.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

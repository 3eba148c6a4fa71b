//! Acceptance battery: one PASS/FAIL line per criterion.

use std::io::Write;

use qsc::suite::{self, SuiteOptions, CRITERIA};

#[test]
fn acceptance_criteria() {
    let report = suite::run(&SuiteOptions::default()).expect("suite runs");
    assert_eq!(report.criteria.len(), CRITERIA.len());
    // Written to the raw handle so the lines survive libtest output capture.
    let mut out = std::io::stdout().lock();
    for c in &report.criteria {
        writeln!(out, "criterion {:>2} {:<10} {}  {}", c.id, c.name, if c.pass { "PASS" } else { "FAIL" }, c.detail).unwrap();
    }
    let failed: Vec<&str> = report.criteria.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

#[test]
fn suite_is_deterministic() {
    let opts = SuiteOptions { only: Some(vec!["qq".into(), "truncation".into(), "baxter".into(), "character".into()]), ..Default::default() };
    let a = serde_json::to_string(&suite::run(&opts).unwrap()).unwrap();
    let b = serde_json::to_string(&suite::run(&opts).unwrap()).unwrap();
    assert_eq!(a, b);
}

//! The nine acceptance criteria. Each prints one PASS/FAIL line; the test
//! fails if any criterion does. All checks are exact (zero tolerance).

use std::time::Instant;

use lexmono::suite::{run_criterion, SuiteConfig, CRITERIA};

#[test]
fn acceptance() {
    let cfg = SuiteConfig::default();
    let mut failed = Vec::new();
    for (id, _) in CRITERIA {
        let start = Instant::now();
        let report = run_criterion(id, &cfg).expect("known criterion");
        println!("{report} [{:.1?}]", start.elapsed());
        if !report.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

//! Prints one line per acceptance criterion and fails if any criterion does.

use sunada::acceptance::{run_all, CRITERIA};

fn main() {
    let results = run_all(0);
    assert_eq!(results.len(), CRITERIA.len());
    for r in &results {
        println!(
            "criterion {}: {}: {}: {} ({:.1?})",
            r.id,
            if r.pass { "PASS" } else { "FAIL" },
            r.title,
            r.detail,
            r.elapsed
        );
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria pass", results.len());
}

//! Run the full inequality suite against one basis and print each
//! check's verdict line.
//!
//! ```bash
//! cargo run --example theorem_checks
//! ```

use greedylab::basis::Basis;
use greedylab::estimator::SearchOpts;
use greedylab::grid::GridSpec;
use greedylab::theorems::TheoremSuite;

fn main() {
    let basis = Basis::summing(3).unwrap();
    let grid = GridSpec::new(2).unwrap();
    let opts = SearchOpts::default();
    let suite = TheoremSuite::new(&basis, "summing-3", grid, opts).unwrap();

    let reports = suite.run("all").unwrap();
    for report in &reports {
        println!("{}", report.summary_line());
    }

    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!("\n{} checks, {} failed", reports.len(), failed);
}

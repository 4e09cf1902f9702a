//! Emit a CSV of threshold constants across summing-basis dimensions,
//! showing how conditionality drives the constants up.
//!
//! ```bash
//! cargo run --example dimension_growth
//! ```

use greedylab::basis::Basis;
use greedylab::catalog;
use greedylab::curves::{curves_to_string, CurveSpec};
use greedylab::estimator::{estimate_gamma, Quantity, SearchOpts};
use greedylab::grid::{GridSpec, Level};

fn main() {
    let entries = catalog::builtin();
    let summing: Vec<_> = entries
        .iter()
        .filter(|e| e.id.starts_with("summing-"))
        .collect();

    let grid = GridSpec::new(2).unwrap();
    let opts = SearchOpts::default();
    let spec = CurveSpec {
        quantities: vec![Quantity::Phi, Quantity::Gamma],
        levels: vec![Level::new(1, 2).unwrap(), Level::new(1, 1).unwrap()],
        envelope: true,
    };

    let csv = curves_to_string(&summing, &grid, &spec, &opts).unwrap();
    print!("{csv}");

    // The same growth, measured directly: the constant steps up every
    // other dimension for this family.
    println!("\ngamma by dimension (coarse grid):");
    let coarse = GridSpec::new(1).unwrap();
    for dim in 2..=6 {
        let basis = Basis::summing(dim).unwrap();
        let est = estimate_gamma(&basis, &coarse, &opts).unwrap();
        println!("  dim {dim}: {}", est.value);
    }
}

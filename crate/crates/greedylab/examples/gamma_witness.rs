//! Compute the quasi-greedy lower constant and its relatives for the
//! difference basis, then replay the witnesses.
//!
//! ```bash
//! cargo run --example gamma_witness
//! ```

use greedylab::basis::Basis;
use greedylab::estimator::{
    default_scales, estimate_gamma, estimate_qglc_v, estimate_succ, reevaluate_witness, SearchOpts,
};
use greedylab::grid::GridSpec;

fn main() {
    let grid = GridSpec::new(1).unwrap();
    let opts = SearchOpts::default();

    println!("difference basis: indicator-quotient constants by dimension");
    println!("{:>4}  {:>12}  {:>12}  {:>12}", "dim", "gamma", "succ", "qglc-v");
    for dim in 2..=6 {
        let basis = Basis::difference(dim).unwrap();
        let gamma = estimate_gamma(&basis, &grid, &opts).unwrap();
        let succ = estimate_succ(&basis, &grid, &opts).unwrap();
        let qglc = estimate_qglc_v(&basis, &grid, &opts, &default_scales()).unwrap();
        println!(
            "{:>4}  {:>12.8}  {:>12.8}  {:>12.8}",
            dim, gamma.value, succ.value, qglc.value
        );
    }

    // The witness records the sign pattern, the greedy set, and the
    // perturbation that realised the supremum.
    let basis = Basis::difference(4).unwrap();
    let est = estimate_gamma(&basis, &grid, &opts).unwrap();
    println!("\ngamma on dim 4 = {}", est.value);
    println!("  signs        = {:?}", est.witness.signs);
    println!("  set          = {}", est.witness.set);
    println!("  perturbation = {}", est.witness.coeffs);
    println!("  replayed     = {}", reevaluate_witness(&basis, &est).unwrap());
}

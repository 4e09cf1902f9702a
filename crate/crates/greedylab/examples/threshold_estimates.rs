//! Estimate the four leveled threshold constants across a grid of
//! levels on the summing basis, printing the certified witnesses.
//!
//! ```bash
//! cargo run --example threshold_estimates
//! ```

use greedylab::basis::Basis;
use greedylab::estimator::{
    estimate_lambda, estimate_phi, estimate_rho, estimate_theta, reevaluate_witness, SearchOpts,
};
use greedylab::grid::GridSpec;

fn main() {
    let basis = Basis::summing(3).unwrap();
    let grid = GridSpec::new(4).unwrap();
    let opts = SearchOpts::default();

    println!("summing basis, dim 3, grid m = {}", grid.m());
    println!("{:>5}  {:>14}  {:>14}  {:>14}  {:>14}", "a", "phi", "theta", "lambda", "rho");
    for level in grid.levels() {
        let phi = estimate_phi(&basis, &level, &grid, &opts).unwrap();
        let theta = estimate_theta(&basis, &level, &grid, &opts).unwrap();
        let lambda = estimate_lambda(&basis, &level, &grid, &opts).unwrap();
        let rho = estimate_rho(&basis, &level, &grid, &opts).unwrap();
        println!(
            "{:>5}  {:>14.10}  {:>14.10}  {:>14.10}  {:>14.10}",
            level.to_string(),
            phi.value,
            theta.value,
            lambda.value,
            rho.value
        );
    }

    // Every estimate ships the maximizer that produced it; replaying the
    // witness through the norm reproduces the value bit for bit.
    let level = grid.levels()[1];
    let est = estimate_phi(&basis, &level, &grid, &opts).unwrap();
    println!("\nphi({level}) = {}", est.value);
    println!("  witness f    = {}", est.witness.coeffs);
    println!("  witness set  = {}", est.witness.set);
    println!("  witness signs= {:?}", est.witness.signs);
    println!("  replayed     = {}", reevaluate_witness(&basis, &est).unwrap());
}

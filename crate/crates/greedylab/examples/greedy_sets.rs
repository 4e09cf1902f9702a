//! Super-threshold sets, greedy sets, and the greedy-set family of a
//! coefficient vector.
//!
//! ```bash
//! cargo run --example greedy_sets
//! ```

use greedylab::coeff::CoeffVector;
use greedylab::greedy::{is_greedy_set, support_set, GreedySetFamily};
use greedylab::grid::GridSpec;

fn main() {
    // f = 1·x1 − 3/4·x2 + 1/4·x3 + 3/4·x4 on the quarter grid.
    let c = CoeffVector::new(vec![4, -3, 1, 3], 4).unwrap();
    println!("coefficients: {c}");

    let grid = GridSpec::new(4).unwrap();
    println!("\nsuper-threshold sets A(a, f):");
    for level in grid.levels() {
        println!("  a = {:<4} -> {}", level.to_string(), support_set(&c, &level));
    }

    let family = GreedySetFamily::new(&c);
    println!("\nthe vector has {} greedy sets:", family.count());
    for set in family.iter() {
        println!("  {set}");
    }

    // Ties allow several greedy sets of the same size; swapping the two
    // tied coordinates keeps the defining property.
    let tied = CoeffVector::new(vec![2, -2, 1, 0], 2).unwrap();
    let family = GreedySetFamily::new(&tied);
    let sized: Vec<String> =
        family.iter().filter(|s| s.len() == 1).map(|s| s.to_string()).collect();
    println!("\ntied top coefficients in {tied}: greedy singletons {}", sized.join(", "));
    for set in family.iter() {
        assert!(is_greedy_set(&tied, &set));
    }
}

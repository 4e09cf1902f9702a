//! Evaluate the built-in quasi-norms on a few vectors, and probe
//! p-convexity numerically.
//!
//! ```bash
//! cargo run --example norms
//! ```

use greedylab::space::{validate_p_convexity, NormDescriptor, QuasiNormedSpace};

fn main() {
    let vectors: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [1.0, -0.5, 0.25], [0.5, 0.5, 0.5]];

    let spaces = [
        ("l1", QuasiNormedSpace::new(3, 1.0, NormDescriptor::Lp { q: 1.0 }).unwrap()),
        ("l2", QuasiNormedSpace::new(3, 1.0, NormDescriptor::Lp { q: 2.0 }).unwrap()),
        ("sup", QuasiNormedSpace::new(3, 1.0, NormDescriptor::Lp { q: f64::INFINITY }).unwrap()),
        ("l-1/2", QuasiNormedSpace::new(3, 0.5, NormDescriptor::Lp { q: 0.5 }).unwrap()),
        ("summing", QuasiNormedSpace::new(3, 1.0, NormDescriptor::Summing).unwrap()),
        ("max-tail", QuasiNormedSpace::new(3, 1.0, NormDescriptor::MaxTail).unwrap()),
        (
            "weighted",
            QuasiNormedSpace::new(
                3,
                1.0,
                NormDescriptor::WeightedLp { q: 1.0, weights: vec![1.0, 2.0, 4.0] },
            )
            .unwrap(),
        ),
    ];

    println!("{:>9}  {:>22}  {:>22}  {:>22}", "space", "(1,0,0)", "(1,-1/2,1/4)", "(1/2,1/2,1/2)");
    for (name, space) in &spaces {
        let row: Vec<String> =
            vectors.iter().map(|v| format!("{:>22.12}", space.norm(v))).collect();
        println!("{:>9}  {}", name, row.join("  "));
    }

    println!();
    for (name, space) in &spaces {
        let report = validate_p_convexity(space, 4000, 7);
        println!(
            "p-convexity of {:>9} at p = {:>4}: worst ratio {:.12} over {} samples ({})",
            name,
            space.p(),
            report.worst_ratio,
            report.samples,
            if report.is_consistent() { "consistent" } else { "violated" },
        );
    }
}

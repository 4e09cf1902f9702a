//! Build bases, read exact dual coefficients, and inspect conditioning.
//!
//! ```bash
//! cargo run --example basis_algebra
//! ```

use greedylab::basis::Basis;
use greedylab::coeff::CoeffVector;

fn main() {
    let summing = Basis::summing(4).unwrap();
    let difference = Basis::difference(4).unwrap();

    // x_n written in ambient coordinates.
    for (name, basis) in [("summing", &summing), ("difference", &difference)] {
        println!("{name} basis, dim {}:", basis.dim());
        for n in 1..=basis.dim() {
            let col: Vec<String> =
                basis.column(n).iter().map(|r| format!("{:>4}", r.to_string())).collect();
            println!("  x_{n} = ({})", col.join(", "));
        }
        println!("  1-norm condition estimate of the change of basis: {:.3}", basis.cond());
    }

    // Coefficient reads are exact: synthesize f = x_1 - 1/2 x_2 + x_4 and
    // recover its coefficients through the dual system.
    let coeffs = CoeffVector::new(vec![2, -1, 0, 2], 2).unwrap();
    let ambient = summing.synthesize(&coeffs);
    let recovered = summing.coefficients(&ambient);
    println!("\nf = x1 - 1/2 x2 + x4 in the summing basis");
    println!("  ambient vector   {ambient:?}");
    println!("  dual(f) recovers {:?}", recovered.unwrap());
    println!("  norm             {}", summing.norm_of(&coeffs));
}

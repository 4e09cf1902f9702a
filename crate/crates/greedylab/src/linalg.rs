//! Small dense linear algebra: exact rational inversion for dual systems and
//! a floating-point condition estimate used to reject degenerate bases.
//!
//! Matrices here are tiny (dimension ≤ 16), so clarity wins over blocking or
//! pivoting finesse. The dual matrix of a basis is computed exactly over the
//! rationals and only then converted to floats, which keeps biorthogonality
//! residuals at rounding level regardless of how nasty the entries are.

// Row/column index loops mirror the textbook algorithms.
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rational matrix entry with machine-word components.
pub type Ratio64 = Ratio<i64>;

/// Exact Gauss–Jordan inversion over the rationals.
///
/// Returns `None` when the matrix is singular (exactly — there is no
/// tolerance involved).
pub fn invert_exact(a: &[Vec<Ratio64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let big = |r: &Ratio64| BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()));
    // Augmented [A | I], reduced in place.
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = a[i].iter().map(big).collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot_row);
        let pivot = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= pivot.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..2 * n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }

    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Converts an exact rational matrix to floats.
pub fn to_f64_matrix(a: &[Vec<BigRational>]) -> Vec<Vec<f64>> {
    a.iter()
        .map(|row| row.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
        .collect()
}

/// Converts a machine-rational matrix to floats.
pub fn ratio_matrix_to_f64(a: &[Vec<Ratio64>]) -> Vec<Vec<f64>> {
    a.iter()
        .map(|row| row.iter().map(|x| *x.numer() as f64 / *x.denom() as f64).collect())
        .collect()
}

/// Maximum absolute column sum (the operator 1-norm).
pub fn one_norm(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    (0..n)
        .map(|j| (0..n).map(|i| a[i][j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Condition number estimate ‖A‖₁·‖A⁻¹‖₁.
pub fn condition_1(a: &[Vec<f64>], inv: &[Vec<f64>]) -> f64 {
    one_norm(a) * one_norm(inv)
}

/// Multiplies two square float matrices (used by composite norms and tests).
pub fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik != 0.0 {
                for j in 0..n {
                    out[i][j] += aik * b[k][j];
                }
            }
        }
    }
    out
}

/// Largest deviation of `d·b` from the identity, entrywise.
pub fn identity_residual(d: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let n = d.len();
    let prod = matmul(d, b);
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod[i][j] - target).abs());
        }
    }
    worst
}

/// Exact biorthogonality check for the rational pair (used in tests).
pub fn identity_exact(d: &[Vec<BigRational>], b: &[Vec<Ratio64>]) -> bool {
    let n = d.len();
    for i in 0..n {
        for j in 0..n {
            let mut acc = BigRational::zero();
            for k in 0..n {
                let bkj = BigRational::new(BigInt::from(*b[k][j].numer()), BigInt::from(*b[k][j].denom()));
                acc += &d[i][k] * bkj;
            }
            let target = if i == j { BigRational::one() } else { BigRational::zero() };
            if acc != target {
                return false;
            }
        }
    }
    true
}

/// Parses a rational string `"k"` or `"k/m"`, allowing negatives.
pub fn parse_ratio(s: &str) -> Option<Ratio64> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse::<i64>().ok()?;
            let d = d.trim().parse::<i64>().ok()?;
            if d == 0 {
                None
            } else {
                Some(Ratio64::new(n, d))
            }
        }
        None => s.parse::<i64>().ok().map(Ratio64::from_integer),
    }
}

/// Formats a rational as `"k"` or `"k/m"`, reduced with positive denominator.
pub fn format_ratio(r: &Ratio64) -> String {
    if r.denom().abs() == 1 {
        format!("{}", r.numer() * r.denom().signum())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

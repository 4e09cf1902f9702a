//! Finite-dimensional quasi-normed spaces.
//!
//! A [`QuasiNormedSpace`] pairs a dimension with a p-convexity parameter
//! `p ∈ (0, 1]` and a concrete norm recipe. All search routines in this crate
//! evaluate norms through [`QuasiNormedSpace::norm`], a pure function of the
//! input slice, so repeated runs over the same data are bitwise reproducible.

use crate::error::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Hard cap on ambient dimension; exhaustive searches grow exponentially.
pub const MAX_DIM: usize = 16;

/// Recipe for evaluating a quasi-norm on coefficient vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum NormDescriptor {
    /// `(Σ |x_i|^q)^{1/q}`, with `q = ∞` read as `max |x_i|`.
    Lp { q: f64 },
    /// `(Σ w_i |x_i|^q)^{1/q}` with strictly positive weights and finite `q`.
    WeightedLp { q: f64, weights: Vec<f64> },
    /// Largest absolute prefix sum `max_n |x_1 + ⋯ + x_n|`.
    Summing,
    /// Largest absolute suffix sum `max_n |x_n + ⋯ + x_N|`.
    MaxTail,
    /// `‖T x‖_q` for a square matrix `T` given by rows.
    Composite { rows: Vec<Vec<f64>>, q: f64 },
}

impl NormDescriptor {
    fn validate(&self, dim: usize) -> Result<()> {
        match self {
            NormDescriptor::Lp { q } => {
                if *q > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "Lp exponent must be positive or infinite, got {q}"
                    )))
                }
            }
            NormDescriptor::WeightedLp { q, weights } => {
                if !q.is_finite() || *q <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "weighted Lp exponent must be finite and positive, got {q}"
                    )));
                }
                if weights.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: weights.len(),
                    });
                }
                if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
                    return Err(Error::InvalidParameter(
                        "weights must be finite and strictly positive".into(),
                    ));
                }
                Ok(())
            }
            NormDescriptor::Summing | NormDescriptor::MaxTail => Ok(()),
            NormDescriptor::Composite { rows, q } => {
                if !q.is_finite() && *q != f64::INFINITY {
                    return Err(Error::InvalidParameter("composite exponent must be positive".into()));
                }
                if q.is_finite() && *q <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "composite exponent must be positive, got {q}"
                    )));
                }
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: rows.len(),
                    });
                }
                Ok(())
            }
        }
    }
}

/// A finite-dimensional space with a homogeneous quasi-norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiNormedSpace {
    dim: usize,
    p: f64,
    norm: NormDescriptor,
}

impl QuasiNormedSpace {
    /// Builds a space after validating dimension, `p`, and the descriptor.
    pub fn new(dim: usize, p: f64, norm: NormDescriptor) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidParameter(format!(
                "dimension must be between 1 and {MAX_DIM}, got {dim}"
            )));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "p must lie in (0, 1], got {p}"
            )));
        }
        norm.validate(dim)?;
        Ok(Self { dim, p, norm })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The p-convexity parameter: `‖x + y‖^p ≤ ‖x‖^p + ‖y‖^p`.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// True when `p = 1`, i.e. the triangle inequality holds outright.
    pub fn is_banach(&self) -> bool {
        self.p == 1.0
    }

    pub fn descriptor(&self) -> &NormDescriptor {
        &self.norm
    }

    /// Evaluates the quasi-norm. Panics if the slice length is wrong; use
    /// [`QuasiNormedSpace::try_norm`] for checked evaluation at boundaries.
    pub fn norm(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim, "vector length must equal the space dimension");
        match &self.norm {
            NormDescriptor::Lp { q } => lp_norm(x, *q),
            NormDescriptor::WeightedLp { q, weights } => {
                let sum: f64 = x
                    .iter()
                    .zip(weights)
                    .map(|(v, w)| w * v.abs().powf(*q))
                    .sum();
                sum.powf(1.0 / *q)
            }
            NormDescriptor::Summing => {
                let mut run = 0.0;
                let mut best = 0.0f64;
                for v in x {
                    run += v;
                    best = best.max(run.abs());
                }
                best
            }
            NormDescriptor::MaxTail => {
                let mut run = 0.0;
                let mut best = 0.0f64;
                for v in x.iter().rev() {
                    run += v;
                    best = best.max(run.abs());
                }
                best
            }
            NormDescriptor::Composite { rows, q } => {
                let image: Vec<f64> = rows
                    .iter()
                    .map(|row| row.iter().zip(x).map(|(t, v)| t * v).sum())
                    .collect();
                lp_norm(&image, *q)
            }
        }
    }

    /// Checked variant of [`QuasiNormedSpace::norm`].
    pub fn try_norm(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.norm(x))
    }
}

/// `(Σ |x_i|^q)^{1/q}` with dedicated paths for q ∈ {1/2, 1, 2, ∞}.
fn lp_norm(x: &[f64], q: f64) -> f64 {
    if q == f64::INFINITY {
        return x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    }
    if q == 1.0 {
        return x.iter().map(|v| v.abs()).sum();
    }
    if q == 2.0 {
        return x.iter().map(|v| v * v).sum::<f64>().sqrt();
    }
    if q == 0.5 {
        let s: f64 = x.iter().map(|v| v.abs().sqrt()).sum();
        return s * s;
    }
    let sum: f64 = x.iter().map(|v| v.abs().powf(q)).sum();
    sum.powf(1.0 / q)
}

/// One sampled failure of the p-triangle inequality.
#[derive(Debug, Clone, Serialize)]
pub struct PConvexityViolation {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// `‖x + y‖^p`
    pub lhs: f64,
    /// `‖x‖^p + ‖y‖^p`
    pub rhs: f64,
}

/// Outcome of randomized p-convexity validation.
#[derive(Debug, Clone, Serialize)]
pub struct PConvexityReport {
    pub samples: u64,
    pub violation_count: u64,
    /// At most eight stored examples; the count above is exhaustive.
    pub examples: Vec<PConvexityViolation>,
    /// Largest observed `‖x+y‖^p / (‖x‖^p + ‖y‖^p)`; ≤ 1 when consistent.
    pub worst_ratio: f64,
}

impl PConvexityReport {
    pub fn is_consistent(&self) -> bool {
        self.violation_count == 0
    }
}

/// Samples random pairs from `[-1, 1]^dim` and tests the p-triangle
/// inequality with relative slack `1e-9`.
///
/// A declared `p` that overstates the convexity of the norm (say `p = 1`
/// against an `ℓ_{1/2}` recipe) shows up here with concrete witnesses.
pub fn validate_p_convexity(space: &QuasiNormedSpace, samples: u64, seed: u64) -> PConvexityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = space.p();
    let mut report = PConvexityReport {
        samples,
        violation_count: 0,
        examples: Vec::new(),
        worst_ratio: 0.0,
    };
    for _ in 0..samples {
        let x: Vec<f64> = (0..space.dim()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let y: Vec<f64> = (0..space.dim()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = space.norm(&sum).powf(p);
        let rhs = space.norm(&x).powf(p) + space.norm(&y).powf(p);
        if rhs == 0.0 {
            continue;
        }
        let ratio = lhs / rhs;
        report.worst_ratio = report.worst_ratio.max(ratio);
        if lhs > rhs * (1.0 + 1e-9) {
            report.violation_count += 1;
            if report.examples.len() < 8 {
                report.examples.push(PConvexityViolation { x, y, lhs, rhs });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lp_fast_paths_match_hand_values() {
        let l1 = QuasiNormedSpace::new(3, 1.0, NormDescriptor::Lp { q: 1.0 }).unwrap();
        let l2 = QuasiNormedSpace::new(3, 1.0, NormDescriptor::Lp { q: 2.0 }).unwrap();
        let linf = QuasiNormedSpace::new(3, 1.0, NormDescriptor::Lp { q: f64::INFINITY }).unwrap();
        let lhalf = QuasiNormedSpace::new(3, 0.5, NormDescriptor::Lp { q: 0.5 }).unwrap();
        let x = [1.0, -2.0, 2.0];
        assert_eq!(l1.norm(&x), 5.0);
        assert_eq!(l2.norm(&x), 3.0);
        assert_eq!(linf.norm(&x), 2.0);
        // (1 + √2 + √2)² for the 1/2-quasi-norm.
        let s = 1.0 + 2.0f64.sqrt() + 2.0f64.sqrt();
        assert!((lhalf.norm(&x) - s * s).abs() < 1e-12);
    }

    #[test]
    fn summing_and_max_tail_scan_partial_sums() {
        let s = QuasiNormedSpace::new(4, 1.0, NormDescriptor::Summing).unwrap();
        let t = QuasiNormedSpace::new(4, 1.0, NormDescriptor::MaxTail).unwrap();
        let x = [1.0, -3.0, 2.0, 1.0];
        // Prefix sums: 1, -2, 0, 1 → max |·| = 2.
        assert_eq!(s.norm(&x), 2.0);
        // Suffix sums: 1, 3, 0, 1 → max |·| = 3.
        assert_eq!(t.norm(&x), 3.0);
        // A sign flip changes nothing for either scan family's maximum here.
        let y = [-1.0, 3.0, -2.0, -1.0];
        assert_eq!(s.norm(&y), 2.0);
        assert_eq!(t.norm(&y), 3.0);
    }

    #[test]
    fn composite_applies_matrix_then_lq() {
        // Prefix-sum matrix followed by the max norm reproduces Summing.
        let rows = vec![
            vec![1.0, 0.0, 0.0],
            vec![1.0, 1.0, 0.0],
            vec![1.0, 1.0, 1.0],
        ];
        let comp = QuasiNormedSpace::new(
            3,
            1.0,
            NormDescriptor::Composite { rows, q: f64::INFINITY },
        )
        .unwrap();
        let summing = QuasiNormedSpace::new(3, 1.0, NormDescriptor::Summing).unwrap();
        for x in [[1.0, -2.0, 0.5], [0.0, 0.0, 0.0], [3.0, -1.0, -1.0]] {
            assert_eq!(comp.norm(&x), summing.norm(&x));
        }
    }

    #[test]
    fn constructor_rejects_bad_parameters() {
        assert!(QuasiNormedSpace::new(0, 1.0, NormDescriptor::Summing).is_err());
        assert!(QuasiNormedSpace::new(17, 1.0, NormDescriptor::Summing).is_err());
        assert!(QuasiNormedSpace::new(2, 0.0, NormDescriptor::Summing).is_err());
        assert!(QuasiNormedSpace::new(2, 1.5, NormDescriptor::Summing).is_err());
        assert!(QuasiNormedSpace::new(2, 1.0, NormDescriptor::Lp { q: 0.0 }).is_err());
        assert!(QuasiNormedSpace::new(
            2,
            1.0,
            NormDescriptor::WeightedLp { q: 1.0, weights: vec![1.0] }
        )
        .is_err());
        assert!(QuasiNormedSpace::new(
            2,
            1.0,
            NormDescriptor::WeightedLp { q: 1.0, weights: vec![1.0, -1.0] }
        )
        .is_err());
    }

    #[test]
    fn p_convexity_validation_flags_mismatched_p() {
        // ℓ_{1/2} genuinely is 1/2-convex…
        let honest = QuasiNormedSpace::new(3, 0.5, NormDescriptor::Lp { q: 0.5 }).unwrap();
        assert!(validate_p_convexity(&honest, 500, 7).is_consistent());
        // …but it is not 1-convex, and sampling finds witnesses fast.
        let overstated = QuasiNormedSpace::new(3, 1.0, NormDescriptor::Lp { q: 0.5 }).unwrap();
        let report = validate_p_convexity(&overstated, 500, 7);
        assert!(!report.is_consistent());
        assert!(report.worst_ratio > 1.0);
        assert!(!report.examples.is_empty());
        let ex = &report.examples[0];
        assert!(ex.lhs > ex.rhs);
    }

    #[test]
    fn norm_is_homogeneous_and_definite() {
        let spaces = [
            QuasiNormedSpace::new(4, 1.0, NormDescriptor::Lp { q: 1.0 }).unwrap(),
            QuasiNormedSpace::new(4, 0.5, NormDescriptor::Lp { q: 0.5 }).unwrap(),
            QuasiNormedSpace::new(4, 1.0, NormDescriptor::Summing).unwrap(),
            QuasiNormedSpace::new(4, 1.0, NormDescriptor::MaxTail).unwrap(),
        ];
        let x = [0.25, -1.5, 0.0, 2.0];
        for s in &spaces {
            assert_eq!(s.norm(&[0.0; 4]), 0.0);
            assert!(s.norm(&x) > 0.0);
            let scaled: Vec<f64> = x.iter().map(|v| -2.0 * v).collect();
            let rel = (s.norm(&scaled) - 2.0 * s.norm(&x)).abs() / s.norm(&x);
            assert!(rel < 1e-12);
        }
    }
}

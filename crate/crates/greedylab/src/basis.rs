//! Bases of quasi-normed spaces and their dual (coefficient) functionals.
//!
//! A [`Basis`] stores basis vectors as exact rational columns together with
//! the exact inverse matrix, so analysis and synthesis round-trip without
//! drift. Every norm evaluation used by the search routines funnels through
//! [`Basis::norm_of_masked`], which accumulates `Σ_{n∈A} c_n · x_n` in a
//! fixed coordinate order; identical coefficient data therefore produces
//! bitwise identical norms no matter which search path asked for them.

use crate::coeff::{CoeffVector, IndexSet, SignPattern};
use crate::error::{Error, Result};
use crate::linalg::{
    condition_1, identity_residual, invert_exact, ratio_matrix_to_f64, to_f64_matrix, Ratio64,
};
use crate::space::{NormDescriptor, QuasiNormedSpace};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Conditioning threshold beyond which a basis matrix is rejected.
pub const MAX_CONDITION: f64 = 1e10;

/// A basis `x_1, …, x_N` of a quasi-normed space, with dual functionals.
#[derive(Debug, Clone)]
pub struct Basis {
    space: QuasiNormedSpace,
    /// `columns[n][k]` = ambient coordinate `k+1` of basis vector `x_{n+1}`.
    columns: Vec<Vec<Ratio64>>,
    columns_f64: Vec<Vec<f64>>,
    /// `dual_rows[n]` represents `x_{n+1}^*` on ambient vectors.
    dual_exact: Vec<Vec<BigRational>>,
    dual_f64: Vec<Vec<f64>>,
    cond: f64,
}

impl Basis {
    /// Builds a basis from exact rational columns.
    ///
    /// The dual matrix is the exact inverse; singularity is decided exactly,
    /// and a finite but extreme condition number (> 1e10) is rejected.
    pub fn from_columns(space: QuasiNormedSpace, columns: Vec<Vec<Ratio64>>) -> Result<Self> {
        let n = space.dim();
        if columns.len() != n || columns.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: columns.len() });
        }
        // Row-major matrix B with B[k][j] = coordinate k of column j.
        let b_rows: Vec<Vec<Ratio64>> = (0..n)
            .map(|k| (0..n).map(|j| columns[j][k]).collect())
            .collect();
        let inv = invert_exact(&b_rows).ok_or(Error::SingularMatrix)?;
        let b_f64 = ratio_matrix_to_f64(&b_rows);
        let dual_f64 = to_f64_matrix(&inv);
        let cond = condition_1(&b_f64, &dual_f64);
        if !cond.is_finite() || cond > MAX_CONDITION {
            return Err(Error::IllConditioned { cond });
        }
        let columns_f64 = columns
            .iter()
            .map(|c| c.iter().map(|r| *r.numer() as f64 / *r.denom() as f64).collect())
            .collect();
        Ok(Self { space, columns, columns_f64, dual_exact: inv, dual_f64, cond })
    }

    /// The canonical basis `x_n = e_n`.
    pub fn canonical(space: QuasiNormedSpace) -> Result<Self> {
        let n = space.dim();
        let columns = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| Ratio64::from_integer(i64::from(k == j)))
                    .collect()
            })
            .collect();
        Self::from_columns(space, columns)
    }

    /// Columns `s_n = e_1 + ⋯ + e_n` of the summing basis.
    pub fn summing_columns(dim: usize) -> Vec<Vec<Ratio64>> {
        (0..dim)
            .map(|j| {
                (0..dim)
                    .map(|k| Ratio64::from_integer(i64::from(k <= j)))
                    .collect()
            })
            .collect()
    }

    /// The summing basis in its standard home: ambient max norm, `p = 1`.
    ///
    /// `Σ c_n s_n` has ambient coordinate `k` equal to the tail sum
    /// `c_k + ⋯ + c_N`, so the norm is the largest absolute tail sum of the
    /// coefficients — the classical conditional example.
    pub fn summing(dim: usize) -> Result<Self> {
        let space = QuasiNormedSpace::new(dim, 1.0, NormDescriptor::Lp { q: f64::INFINITY })?;
        Self::from_columns(space, Self::summing_columns(dim))
    }

    /// Columns `x_1 = e_1`, `x_n = e_n − e_{n−1}` of the difference basis.
    pub fn difference_columns(dim: usize) -> Vec<Vec<Ratio64>> {
        (0..dim)
            .map(|j| {
                (0..dim)
                    .map(|k| {
                        let v = if k == j {
                            1
                        } else if j > 0 && k == j - 1 {
                            -1
                        } else {
                            0
                        };
                        Ratio64::from_integer(v)
                    })
                    .collect()
            })
            .collect()
    }

    /// The difference basis in `ℓ₁`: another classical conditional example.
    pub fn difference(dim: usize) -> Result<Self> {
        let space = QuasiNormedSpace::new(dim, 1.0, NormDescriptor::Lp { q: 1.0 })?;
        Self::from_columns(space, Self::difference_columns(dim))
    }

    pub fn space(&self) -> &QuasiNormedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Condition number ‖B‖₁‖B⁻¹‖₁ of the change-of-basis matrix.
    pub fn cond(&self) -> f64 {
        self.cond
    }

    /// Basis vector `x_n` (1-based) as exact rationals.
    pub fn column(&self, n: usize) -> &[Ratio64] {
        &self.columns[n - 1]
    }

    /// Largest entrywise deviation of `D·B` from the identity in floats.
    /// The exact product is the identity by construction; this measures
    /// nothing but rounding of the float copies.
    pub fn biorthogonality_residual(&self) -> f64 {
        let n = self.dim();
        let b_rows: Vec<Vec<f64>> = (0..n)
            .map(|k| (0..n).map(|j| self.columns_f64[j][k]).collect())
            .collect();
        identity_residual(&self.dual_f64, &b_rows)
    }

    /// Ambient vector of `Σ_{n∈set} c_n x_n`, accumulated in ascending `n`.
    pub fn synth_masked(&self, c: &CoeffVector, set: &IndexSet) -> Vec<f64> {
        debug_assert_eq!(c.dim(), self.dim());
        let mut out = vec![0.0; self.dim()];
        let den = c.den() as f64;
        for n in 0..self.dim() {
            let num = c.nums()[n];
            if num == 0 || !set.contains(n + 1) {
                continue;
            }
            let cf = num as f64 / den;
            for (o, col) in out.iter_mut().zip(&self.columns_f64[n]) {
                *o += cf * col;
            }
        }
        out
    }

    /// Ambient vector of `Σ c_n x_n`.
    pub fn synthesize(&self, c: &CoeffVector) -> Vec<f64> {
        self.synth_masked(c, &IndexSet::full(self.dim()))
    }

    /// Quasi-norm of `Σ_{n∈set} c_n x_n` — the shared evaluation kernel.
    pub fn norm_of_masked(&self, c: &CoeffVector, set: &IndexSet) -> f64 {
        self.space.norm(&self.synth_masked(c, set))
    }

    /// Quasi-norm of `Σ c_n x_n`.
    pub fn norm_of(&self, c: &CoeffVector) -> f64 {
        self.norm_of_masked(c, &IndexSet::full(self.dim()))
    }

    /// All coefficients `x_n^*(v)` of an ambient vector, 1-based order.
    pub fn coefficients(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(self
            .dual_f64
            .iter()
            .map(|row| row.iter().zip(v).map(|(d, x)| d * x).sum())
            .collect())
    }

    /// Exact synthesis over the rationals.
    pub fn synth_exact(&self, c: &CoeffVector) -> Vec<BigRational> {
        let den = BigInt::from(c.den());
        let mut out = vec![BigRational::zero(); self.dim()];
        for n in 0..self.dim() {
            let num = c.nums()[n];
            if num == 0 {
                continue;
            }
            let cf = BigRational::new(BigInt::from(num), den.clone());
            for (o, col) in out.iter_mut().zip(&self.columns[n]) {
                let col = BigRational::new(BigInt::from(*col.numer()), BigInt::from(*col.denom()));
                *o += &cf * col;
            }
        }
        out
    }

    /// Exact analysis over the rationals: coefficients of an ambient vector.
    pub fn coeffs_exact(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.dual_exact
            .iter()
            .map(|row| row.iter().zip(v).map(|(d, x)| d * x).sum())
            .collect()
    }

    /// The signed indicator `𝟙_{ε,A} = Σ_{n∈A} ε_n x_n` as a coefficient
    /// vector (entries ±1 on `A`, zero elsewhere).
    pub fn indicator(&self, signs: &SignPattern, set: &IndexSet) -> CoeffVector {
        let nums = (1..=self.dim())
            .map(|i| if set.contains(i) { i64::from(signs.get(i)) } else { 0 })
            .collect();
        CoeffVector::new(nums, 1).expect("unit denominator")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Ratio64 {
        Ratio64::from_integer(n)
    }

    #[test]
    fn canonical_dual_is_identity() {
        let space = QuasiNormedSpace::new(3, 1.0, NormDescriptor::Lp { q: 1.0 }).unwrap();
        let b = Basis::canonical(space).unwrap();
        assert_eq!(b.cond(), 1.0);
        let c = b.coefficients(&[0.25, -1.0, 3.0]).unwrap();
        assert_eq!(c, vec![0.25, -1.0, 3.0]);
        assert_eq!(b.biorthogonality_residual(), 0.0);
    }

    #[test]
    fn summing_dual_rows_are_adjacent_differences() {
        // For columns s_n = e_1+…+e_n the inverse has rows e_n − e_{n+1},
        // i.e. x_n^*(f) = f_n − f_{n+1} with f_4 := 0.
        let b = Basis::summing(3).unwrap();
        let f = [5.0, 3.0, 2.0];
        let c = b.coefficients(&f).unwrap();
        assert_eq!(c, vec![2.0, 1.0, 2.0]);
        // f = s_1 + s_2 = (2, 1) in dimension 2 has coefficients (1, 1).
        let b2 = Basis::summing(2).unwrap();
        assert_eq!(b2.coefficients(&[2.0, 1.0]).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn indicator_matches_column_sums() {
        let b = Basis::summing(3).unwrap();
        let set = IndexSet::from_indices(3, &[1, 3]).unwrap();
        let signs = SignPattern::plus(3);
        let ind = b.indicator(&signs, &set);
        assert_eq!(ind.nums(), &[1, 0, 1]);
        // s_1 + s_3 = (2, 1, 1), max norm 2.
        assert_eq!(b.synthesize(&ind), vec![2.0, 1.0, 1.0]);
        assert_eq!(b.norm_of(&ind), 2.0);
        // Signed variant: s_1 − s_3 = (0, −1, −1).
        let signs = SignPattern::new(vec![1, 1, -1]).unwrap();
        assert_eq!(b.synthesize(&b.indicator(&signs, &set)), vec![0.0, -1.0, -1.0]);
    }

    #[test]
    fn difference_basis_telescopes() {
        let b = Basis::difference(3).unwrap();
        // x_1 + x_2 + x_3 telescopes to e_3.
        let ones = CoeffVector::new(vec![1, 1, 1], 1).unwrap();
        assert_eq!(b.synthesize(&ones), vec![0.0, 0.0, 1.0]);
        assert_eq!(b.norm_of(&ones), 1.0);
        // Alternating support {1,3} is expensive: (1, −1, 1) in ℓ₁.
        let alt = CoeffVector::new(vec![1, 0, 1], 1).unwrap();
        assert_eq!(b.norm_of(&alt), 3.0);
    }

    #[test]
    fn exact_round_trip_and_float_residual() {
        let b = Basis::summing(4).unwrap();
        let c = CoeffVector::new(vec![3, -1, 0, 2], 4).unwrap();
        let ambient = b.synth_exact(&c);
        let back = b.coeffs_exact(&ambient);
        for (i, r) in back.iter().enumerate() {
            assert_eq!(
                r,
                &BigRational::new(BigInt::from(c.nums()[i]), BigInt::from(c.den()))
            );
        }
        // Float path round-trips within 1e-12.
        let amb = b.synthesize(&c);
        let coeffs = b.coefficients(&amb).unwrap();
        for (got, want) in coeffs.iter().zip(c.as_f64s()) {
            assert!((got - want).abs() <= 1e-12);
        }
    }

    #[test]
    fn masked_synthesis_is_projection() {
        let b = Basis::difference(4).unwrap();
        let c = CoeffVector::new(vec![2, -3, 0, 1], 2).unwrap();
        let set = IndexSet::from_indices(4, &[2, 4]).unwrap();
        let masked = b.synth_masked(&c, &set);
        let projected = b.synthesize(&c.project(&set));
        assert_eq!(masked, projected);
    }

    #[test]
    fn degenerate_matrices_are_rejected() {
        let space = QuasiNormedSpace::new(2, 1.0, NormDescriptor::Lp { q: 1.0 }).unwrap();
        let equal_cols = vec![vec![rat(1), rat(2)], vec![rat(1), rat(2)]];
        assert!(matches!(
            Basis::from_columns(space.clone(), equal_cols),
            Err(Error::SingularMatrix)
        ));
        // Invertible but absurdly conditioned: columns nearly parallel.
        let tiny = Ratio64::new(1, 1_000_000_000_000);
        let near = vec![vec![rat(1), rat(1)], vec![rat(1), rat(1) + tiny]];
        assert!(matches!(
            Basis::from_columns(space, near),
            Err(Error::IllConditioned { .. })
        ));
    }
}

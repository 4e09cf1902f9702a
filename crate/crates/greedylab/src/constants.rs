//! Closed-form constants used by the inequality checks.
//!
//! Everything here is an explicit scalar function of the convexity parameter
//! `p` (and, where noted, of measured quantities like a truncation constant
//! `K`). Checks recompute constants from this module instead of hard-coding
//! literals, so a change of convention propagates everywhere at once.

use crate::error::{Error, Result};

/// Scalar constants attached to a fixed `p ∈ (0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantPack {
    p: f64,
    a_p: f64,
    b_p: f64,
}

impl ConstantPack {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "p must lie in (0, 1], got {p}"
            )));
        }
        let a_p = (2f64.powf(p) - 1.0).powf(-1.0 / p);
        let b_p = 2f64.powf(1.0 / p) * a_p;
        Ok(Self { p, a_p, b_p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Multiplier constant `(2^p − 1)^{−1/p}`.
    ///
    /// Writing a multiplier sequence `t_n ∈ [0, 1]` in binary,
    /// `Σ t_n ε_n x_n = Σ_j 2^{−j} 𝟙_{ε,B_j}`, and the p-triangle inequality
    /// prices the dyadic series at `(Σ_j 2^{−jp})^{1/p}`, which is this
    /// constant. It equals 1 at `p = 1` and grows as `p` shrinks
    /// (`3 + 2√2` at `p = 1/2`); a value below 1 would wrongly claim that
    /// multiplying by scalars in `[0, 1]` can only shrink signed sums.
    pub fn a_p(&self) -> f64 {
        self.a_p
    }

    /// Signed-envelope constant `2^{1/p} · a_p`: prices splitting an
    /// arbitrary real sign pattern into its positive and negative parts
    /// before applying the multiplier bound. Equals 2 at `p = 1`.
    pub fn b_p(&self) -> f64 {
        self.b_p
    }

    /// Threshold `δ = (1 − 2^{−p})^{−1/p} / (b_p K²)` used when splitting a
    /// vector into large and small coefficients in the one-sign argument;
    /// `K` is a measured truncation constant. Simplifies to `2^{1−1/p}/K²`.
    pub fn one_sign_delta(&self, k: f64) -> f64 {
        (1.0 - 2f64.powf(-self.p)).powf(-1.0 / self.p) / (self.b_p * k * k)
    }

    /// Bound `L = 2 · b_p · N^{1/p} · K` with `N = 2` sign classes over the
    /// reals: the cost of reassembling a vector from its one-sign pieces.
    pub fn one_sign_bound(&self, k: f64) -> f64 {
        2.0 * self.b_p * 2f64.powf(1.0 / self.p) * k
    }

    /// Chain constant `C₁ = a_p · K_succ` linking restricted-indicator
    /// domination to the level-decomposition argument.
    pub fn chain_c1(&self, succ: f64) -> f64 {
        self.a_p * succ
    }

    /// Constants `(C, d)` of the power growth bound: from the recursion
    /// `φ(ca) ≤ (1 + (1−c)^p φ(c)^p)^{1/p} · φ(a)` one gets
    /// `φ(a) ≤ C · a^{−d}` on `(0, 1]` with
    ///
    /// `C = (1 + (1−c)^p φ(c)^p)^{1/p} · (φ(1)^p + 1)^{1/p}` and
    /// `d = −(1/p) · log_c(1 + (1−c)^p φ(c)^p)`.
    pub fn power_bound(&self, c: f64, phi_c: f64, phi_1: f64) -> Result<(f64, f64)> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "power bound needs c in (0, 1), got {c}"
            )));
        }
        let p = self.p;
        let step = 1.0 + (1.0 - c).powf(p) * phi_c.powf(p);
        let big_c = step.powf(1.0 / p) * (phi_1.powf(p) + 1.0).powf(1.0 / p);
        let d = -(1.0 / p) * step.ln() / c.ln();
        Ok((big_c, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn banach_case_values() {
        let k = ConstantPack::new(1.0).unwrap();
        assert_eq!(k.a_p(), 1.0);
        assert_eq!(k.b_p(), 2.0);
        assert!((k.one_sign_delta(1.0) - 1.0).abs() < 1e-15);
        assert_eq!(k.one_sign_bound(1.0), 8.0);
        assert_eq!(k.chain_c1(2.0), 2.0);
    }

    #[test]
    fn half_case_values() {
        let k = ConstantPack::new(0.5).unwrap();
        // (√2 − 1)^{−2} = 3 + 2√2.
        let expect = 3.0 + 2.0 * 2f64.sqrt();
        assert!((k.a_p() - expect).abs() < 1e-12);
        assert!((k.b_p() - 4.0 * expect).abs() < 1e-11);
        // δ simplifies to 2^{1−1/p}/K² = 1/2 at p = 1/2, K = 1.
        assert!((k.one_sign_delta(1.0) - 0.5).abs() < 1e-12);
        // Multiplying by scalars in [0,1] must not be claimed contractive.
        assert!(k.a_p() >= 1.0);
    }

    #[test]
    fn power_bound_hand_values() {
        let k = ConstantPack::new(1.0).unwrap();
        let (c, d) = k.power_bound(0.5, 1.0, 1.0).unwrap();
        assert_eq!(c, 3.0);
        assert!((d - 0.584_962_500_721_156_2).abs() < 1e-15);
        assert!(k.power_bound(1.0, 1.0, 1.0).is_err());
        assert!(k.power_bound(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn bad_p_is_rejected() {
        assert!(ConstantPack::new(0.0).is_err());
        assert!(ConstantPack::new(1.5).is_err());
        assert!(ConstantPack::new(-0.5).is_err());
    }
}

//! Outcome records for executable inequality checks.
//!
//! Every check compares a left-hand side against a right-hand side with an
//! explicit, recorded tolerance, and the verdict is a pure function of those
//! four numbers: pass iff `lhs ≤ rhs·(1 + rel_slack) + abs_slack`. Checks
//! whose hypotheses fail on the given inputs report that instead of a
//! verdict, and checks that need structure the inputs lack (for example a
//! finer grid) declare themselves out of scope.

use crate::estimator::Witness;
use std::fmt;

/// Outcome of a single check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The inequality held within the recorded slack.
    Pass,
    /// The inequality failed; the report carries a witness when available.
    Fail,
    /// The check's hypotheses are not satisfied by these inputs, so the
    /// conclusion is not asserted.
    HypothesisFail,
    /// The inputs cannot exercise the check at all (for example, no
    /// admissible level exists on the grid).
    OutOfScope,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::HypothesisFail => "hypothesis-fail",
            Verdict::OutOfScope => "out-of-scope",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One executed check with its numbers laid bare.
#[derive(Debug, Clone)]
pub struct CheckReport {
    /// Stable check identifier, e.g. `"scale-chain"`.
    pub id: &'static str,
    /// Basis the check ran against.
    pub basis_id: String,
    /// Human-readable parameter summary (grid, levels, constants).
    pub params: String,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_slack: f64,
    pub abs_slack: f64,
    pub verdict: Verdict,
    /// Maximizer behind the failing side, when one exists.
    pub witness: Option<Witness>,
}

impl CheckReport {
    /// The verdict an (lhs, rhs, slack) triple earns.
    pub fn decide(lhs: f64, rhs: f64, rel_slack: f64, abs_slack: f64) -> Verdict {
        if lhs <= rhs * (1.0 + rel_slack) + abs_slack {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Builds a report whose verdict follows [`CheckReport::decide`].
    pub fn comparison(
        id: &'static str,
        basis_id: &str,
        params: String,
        lhs: f64,
        rhs: f64,
        rel_slack: f64,
        abs_slack: f64,
    ) -> Self {
        CheckReport {
            id,
            basis_id: basis_id.to_string(),
            params,
            lhs,
            rhs,
            rel_slack,
            abs_slack,
            verdict: Self::decide(lhs, rhs, rel_slack, abs_slack),
            witness: None,
        }
    }

    /// Builds a report that records numbers but asserts nothing.
    pub fn non_comparison(
        id: &'static str,
        basis_id: &str,
        params: String,
        verdict: Verdict,
    ) -> Self {
        CheckReport {
            id,
            basis_id: basis_id.to_string(),
            params,
            lhs: f64::NAN,
            rhs: f64::NAN,
            rel_slack: 0.0,
            abs_slack: 0.0,
            verdict,
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    /// One-line rendering: verdict, id, the compared numbers, parameters.
    pub fn summary_line(&self) -> String {
        if self.lhs.is_nan() && self.rhs.is_nan() {
            format!(
                "[{:>15}] {:<22} {} ({})",
                self.verdict.label(),
                self.id,
                self.basis_id,
                self.params
            )
        } else {
            format!(
                "[{:>15}] {:<22} {}  lhs = {}  rhs = {}  slack = {}rel + {}abs ({})",
                self.verdict.label(),
                self.id,
                self.basis_id,
                sig12(self.lhs),
                sig12(self.rhs),
                self.rel_slack,
                self.abs_slack,
                self.params
            )
        }
    }
}

/// Formats with 12 significant digits, no trailing-zero noise beyond that.
///
/// Used everywhere a bound is printed or serialized to CSV so that reruns
/// produce byte-identical artifacts.
pub fn sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    // Recover the decimal exponent from scientific notation, then print
    // with exactly 12 significant digits in plain notation.
    let sci = format!("{v:e}");
    let exp10: i32 = sci
        .split('e')
        .nth(1)
        .expect("scientific notation has an exponent")
        .parse()
        .expect("exponent is an integer");
    if exp10 > 11 {
        // Integer part alone exceeds 12 digits: round the mantissa and pad.
        let sci12 = format!("{v:.11e}");
        let (mant, e) = sci12.split_once('e').expect("scientific notation");
        let exp: i32 = e.parse().expect("exponent is an integer");
        let neg = mant.starts_with('-');
        let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
        let zeros = "0".repeat((exp - 11).max(0) as usize);
        return format!("{}{digits}{zeros}", if neg { "-" } else { "" });
    }
    let decimals = (11 - exp10) as usize;
    let s = format!("{v:.decimals$}");
    // Trim trailing zeros (and a dangling point) introduced by padding.
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.');
        trimmed.to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_slack_arithmetic() {
        assert_eq!(CheckReport::decide(1.0, 1.0, 0.0, 0.0), Verdict::Pass);
        assert_eq!(CheckReport::decide(1.0 + 1e-12, 1.0, 0.0, 1e-9), Verdict::Pass);
        assert_eq!(CheckReport::decide(1.06, 1.0, 0.05, 0.0), Verdict::Fail);
        assert_eq!(CheckReport::decide(1.04, 1.0, 0.05, 0.0), Verdict::Pass);
        let r = CheckReport::comparison("demo", "b", "p=1".into(), 2.0, 1.0, 0.0, 0.0);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(!r.passed());
    }

    #[test]
    fn hypothesis_fail_and_out_of_scope_count_as_non_failures() {
        let h = CheckReport::non_comparison("demo", "b", "".into(), Verdict::HypothesisFail);
        assert!(h.passed());
        let o = CheckReport::non_comparison("demo", "b", "".into(), Verdict::OutOfScope);
        assert!(o.passed());
    }

    #[test]
    fn sig12_rounds_to_twelve_significant_digits() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(2.0), "2");
        assert_eq!(sig12(0.5), "0.5");
        assert_eq!(sig12(4.0 / 3.0), "1.33333333333");
        assert_eq!(sig12(1234.56789), "1234.56789");
        assert_eq!(sig12(-4.0 / 3.0), "-1.33333333333");
        assert_eq!(sig12(0.0001), "0.0001");
        assert_eq!(sig12(123456789012345.0), "123456789012000");
    }

    #[test]
    fn sig12_is_stable_across_calls() {
        let v = std::f64::consts::PI;
        assert_eq!(sig12(v), sig12(v));
        assert_eq!(sig12(v), "3.14159265359");
    }
}

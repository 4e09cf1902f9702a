//! Rational threshold levels and the coefficient grid.
//!
//! All threshold comparisons in this crate are exact: coefficients live on
//! the grid {k/m : −m ≤ k ≤ m} for a shared denominator m, and threshold
//! levels are rationals in (0,1]. Comparing |k/m| against a level p/q is an
//! integer comparison (|k|·q vs p·m), so no floating-point fuzz leaks into
//! set machinery. Floats only appear when norms are evaluated.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

/// A rational threshold level in (0,1], stored reduced.
///
/// Ordering compares rational values (so `1/2 < 2/3 < 1`); equality and
/// hashing use the reduced form, making `2/4` and `1/2` the same level.
/// Serialized as the string `"num/den"` (or `"1"`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Level {
    num: i64,
    den: i64,
}

impl Ord for Level {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // num, den ≤ 10^6 in practice; i128 removes any overflow worry.
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Level {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Level {
    /// Builds a level from a fraction, reducing it. Errors outside (0,1].
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den <= 0 || num <= 0 || num > den {
            return Err(Error::LevelOutOfRange(format!("{num}/{den}")));
        }
        let g = gcd(num, den);
        Ok(Level { num: num / g, den: den / g })
    }

    /// The level 1.
    pub fn one() -> Self {
        Level { num: 1, den: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    /// Floating-point view (used only for arithmetic inside norm ratios).
    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Parses `"k/m"` or `"k"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<i64>().map_err(|_| Error::BadRational(s.into()))?,
                d.trim().parse::<i64>().map_err(|_| Error::BadRational(s.into()))?,
            ),
            None => (s.parse::<i64>().map_err(|_| Error::BadRational(s.into()))?, 1),
        };
        Level::new(n, d)
    }

    /// True when this level is a multiple of `1/m`, i.e. representable on the
    /// grid with denominator `m`.
    pub fn on_grid(&self, m: i64) -> bool {
        m > 0 && m % self.den == 0
    }

    /// Numerator when written over denominator `m` (requires `on_grid(m)`).
    pub fn numer_on(&self, m: i64) -> i64 {
        debug_assert!(self.on_grid(m));
        self.num * (m / self.den)
    }

    /// Exact product of two levels, if it stays a valid level (it always
    /// does: both factors are in (0,1]).
    pub fn product(&self, other: &Level) -> Level {
        // i64 is ample: denominators in practice are ≤ 10^6.
        let mut n = self.num * other.num;
        let mut d = self.den * other.den;
        let g = gcd(n, d);
        n /= g;
        d /= g;
        Level { num: n, den: d }
    }

    /// Exact integer power, staying in (0,1].
    pub fn pow(&self, k: u32) -> Option<Level> {
        let mut acc = Level::one();
        for _ in 0..k {
            acc = match (acc.num.checked_mul(self.num), acc.den.checked_mul(self.den)) {
                (Some(n), Some(d)) => {
                    let g = gcd(n, d);
                    Level { num: n / g, den: d / g }
                }
                _ => return None,
            };
        }
        Some(acc)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Level {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Level {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Level::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// The coefficient grid {k/m : −m ≤ k ≤ m} per coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    m: i64,
}

impl GridSpec {
    /// Grid with denominator `m ≥ 1`.
    pub fn new(m: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParameter(format!("grid denominator m={m} must be ≥ 1")));
        }
        Ok(GridSpec { m })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// Number of grid values per coordinate, 2m+1.
    pub fn values_per_coordinate(&self) -> i64 {
        2 * self.m + 1
    }

    /// Total grid points for `dim` coordinates, saturating at `u64::MAX`.
    pub fn point_count(&self, dim: usize) -> u64 {
        let base = self.values_per_coordinate() as u64;
        let mut acc: u64 = 1;
        for _ in 0..dim {
            acc = acc.saturating_mul(base);
        }
        acc
    }

    /// All on-grid levels j/m for j = 1..=m, ascending.
    pub fn levels(&self) -> Vec<Level> {
        (1..=self.m).map(|j| Level::new(j, self.m).expect("j/m in (0,1]")).collect()
    }

    /// Validates that a level lies on this grid.
    pub fn require_on_grid(&self, level: Level) -> Result<()> {
        if level.on_grid(self.m) {
            Ok(())
        } else {
            Err(Error::OffGridLevel { level: level.to_string(), m: self.m })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_reduce_and_compare() {
        let a = Level::new(2, 4).unwrap();
        let b = Level::new(1, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1/2");
        assert!(Level::new(3, 4).unwrap() > a);
        assert_eq!(Level::one().to_string(), "1");
    }

    #[test]
    fn level_rejects_out_of_range() {
        assert!(Level::new(0, 4).is_err());
        assert!(Level::new(5, 4).is_err());
        assert!(Level::new(1, 0).is_err());
        assert!(Level::new(-1, 4).is_err());
    }

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(Level::parse("1").unwrap(), Level::one());
        assert_eq!(Level::parse("3/4").unwrap(), Level::new(3, 4).unwrap());
        assert_eq!(Level::parse(" 2/8 ").unwrap(), Level::new(1, 4).unwrap());
        assert!(Level::parse("0").is_err());
        assert!(Level::parse("x").is_err());
    }

    #[test]
    fn on_grid_uses_reduced_denominator() {
        let half = Level::new(1, 2).unwrap();
        assert!(half.on_grid(2));
        assert!(half.on_grid(4));
        assert!(!half.on_grid(3));
        assert_eq!(half.numer_on(4), 2);
        let third = Level::new(1, 3).unwrap();
        assert!(!third.on_grid(4));
        assert!(third.on_grid(6));
    }

    #[test]
    fn grid_levels_ascend() {
        let g = GridSpec::new(4).unwrap();
        let ls: Vec<String> = g.levels().iter().map(|l| l.to_string()).collect();
        assert_eq!(ls, ["1/4", "1/2", "3/4", "1"]);
        assert_eq!(g.point_count(3), 9 * 9 * 9);
    }

    #[test]
    fn products_and_powers_are_exact() {
        let half = Level::new(1, 2).unwrap();
        assert_eq!(half.product(&half), Level::new(1, 4).unwrap());
        assert_eq!(half.pow(3).unwrap(), Level::new(1, 8).unwrap());
        assert_eq!(half.pow(0).unwrap(), Level::one());
    }
}

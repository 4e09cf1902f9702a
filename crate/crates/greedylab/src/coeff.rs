//! Coefficient vectors, index sets, and sign patterns.
//!
//! Search grids consist of rational points `j/m`, so coefficient vectors keep
//! exact integer numerators over one shared denominator. Comparisons against
//! threshold levels are then integer comparisons, immune to rounding, and the
//! float view is obtained by a single correctly rounded division per entry.
//!
//! Indices are 1-based everywhere in the public API: the first basis vector
//! is index 1. Internally sets are stored as bitmasks with bit `i` standing
//! for index `i + 1`.

use crate::error::{Error, Result};
use crate::linalg::{format_ratio, Ratio64};
use std::fmt;

/// Subset of `{1, …, dim}` backed by a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSet {
    mask: u32,
    dim: usize,
}

impl IndexSet {
    /// Builds a set from 1-based indices.
    pub fn from_indices(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &i in indices {
            if i == 0 || i > dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            mask |= 1 << (i - 1);
        }
        Ok(Self { mask, dim })
    }

    /// Wraps a raw bitmask (bit `i` ⇔ index `i + 1`).
    pub fn from_mask(dim: usize, mask: u32) -> Self {
        debug_assert!(dim <= 32 && mask < (1u32 << dim) || dim == 32);
        Self { mask, dim }
    }

    pub fn empty(dim: usize) -> Self {
        Self { mask: 0, dim }
    }

    pub fn full(dim: usize) -> Self {
        Self { mask: if dim == 32 { u32::MAX } else { (1u32 << dim) - 1 }, dim }
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// Membership test for a 1-based index.
    pub fn contains(&self, index: usize) -> bool {
        index >= 1 && index <= self.dim && self.mask & (1 << (index - 1)) != 0
    }

    pub fn complement(&self) -> Self {
        Self { mask: Self::full(self.dim).mask & !self.mask, dim: self.dim }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self { mask: self.mask | other.mask, dim: self.dim }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self { mask: self.mask & other.mask, dim: self.dim }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.mask & !other.mask == 0
    }

    /// 1-based indices in ascending order.
    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.mask;
        while m != 0 {
            let bit = m.trailing_zeros() as usize;
            out.push(bit + 1);
            m &= m - 1;
        }
        out
    }

    /// Compares as sorted index lists, so `{1,3} < {2}` (1 comes first).
    pub fn cmp_as_sorted_lists(&self, other: &Self) -> std::cmp::Ordering {
        let mut a = self.mask;
        let mut b = other.mask;
        loop {
            match (a == 0, b == 0) {
                (true, true) => return std::cmp::Ordering::Equal,
                (true, false) => return std::cmp::Ordering::Less,
                (false, true) => return std::cmp::Ordering::Greater,
                (false, false) => {
                    let ia = a.trailing_zeros();
                    let ib = b.trailing_zeros();
                    if ia != ib {
                        return ia.cmp(&ib);
                    }
                    a &= a - 1;
                    b &= b - 1;
                }
            }
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// A vector of signs, one per coordinate, each `+1` or `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignPattern(Vec<i8>);

impl SignPattern {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::SignSetMismatch("signs must be +1 or -1".into()));
        }
        Ok(Self(signs))
    }

    pub fn plus(dim: usize) -> Self {
        Self(vec![1; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Sign at a 1-based index.
    pub fn get(&self, index: usize) -> i8 {
        self.0[index - 1]
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    /// Signs restricted to a set, in ascending index order.
    pub fn on_set(&self, set: &IndexSet) -> Vec<i8> {
        set.indices().iter().map(|&i| self.get(i)).collect()
    }
}

/// Exact rational coefficient vector: entry `i` equals `nums[i-1] / den`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoeffVector {
    nums: Vec<i64>,
    den: i64,
}

impl CoeffVector {
    pub fn new(nums: Vec<i64>, den: i64) -> Result<Self> {
        if den < 1 {
            return Err(Error::BadRational(format!(
                "denominator must be a positive integer, got {den}"
            )));
        }
        Ok(Self { nums, den })
    }

    pub fn zero(dim: usize) -> Self {
        Self { nums: vec![0; dim], den: 1 }
    }

    /// Builds a vector from per-entry rationals via their common denominator.
    pub fn from_ratios(entries: &[Ratio64]) -> Result<Self> {
        let mut den: i64 = 1;
        for r in entries {
            let d = *r.denom();
            let g = gcd(den, d);
            den = den
                .checked_div(g)
                .and_then(|x| x.checked_mul(d))
                .ok_or_else(|| Error::BadRational("denominator overflow".into()))?;
        }
        let nums = entries
            .iter()
            .map(|r| {
                r.numer()
                    .checked_mul(den / r.denom())
                    .ok_or_else(|| Error::BadRational("numerator overflow".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { nums, den })
    }

    pub fn dim(&self) -> usize {
        self.nums.len()
    }

    pub fn nums(&self) -> &[i64] {
        &self.nums
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// Entry at a 1-based index, reduced.
    pub fn entry(&self, index: usize) -> Ratio64 {
        Ratio64::new(self.nums[index - 1], self.den)
    }

    /// Reduced `"num/den"` strings, one per entry.
    pub fn entry_strings(&self) -> Vec<String> {
        (1..=self.dim()).map(|i| format_ratio(&self.entry(i))).collect()
    }

    /// Float view; each entry is one correctly rounded division.
    pub fn as_f64s(&self) -> Vec<f64> {
        let d = self.den as f64;
        self.nums.iter().map(|&n| n as f64 / d).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.nums.iter().all(|&n| n == 0)
    }

    /// True when every entry lies in `[-1, 1]`.
    pub fn in_unit_cube(&self) -> bool {
        self.nums.iter().all(|&n| n.abs() <= self.den)
    }

    /// Zeroes all entries outside `set`.
    pub fn project(&self, set: &IndexSet) -> Self {
        let nums = self
            .nums
            .iter()
            .enumerate()
            .map(|(i, &n)| if set.contains(i + 1) { n } else { 0 })
            .collect();
        Self { nums, den: self.den }
    }

    /// Signs of the entries, with `sgn(0) = +1` by convention.
    pub fn sign_vector(&self) -> SignPattern {
        SignPattern(self.nums.iter().map(|&n| if n < 0 { -1 } else { 1 }).collect())
    }

    /// The set of 1-based indices with nonzero entries.
    pub fn support(&self) -> IndexSet {
        let mut mask = 0u32;
        for (i, &n) in self.nums.iter().enumerate() {
            if n != 0 {
                mask |= 1 << i;
            }
        }
        IndexSet::from_mask(self.dim(), mask)
    }

    /// Exact scaling by `s_num / s_den` (no reduction, checked arithmetic).
    pub fn scaled(&self, s_num: i64, s_den: i64) -> Result<Self> {
        if s_den < 1 {
            return Err(Error::BadRational(format!(
                "scale denominator must be positive, got {s_den}"
            )));
        }
        let nums = self
            .nums
            .iter()
            .map(|n| {
                n.checked_mul(s_num)
                    .ok_or_else(|| Error::BadRational("numerator overflow".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let den = self
            .den
            .checked_mul(s_den)
            .ok_or_else(|| Error::BadRational("denominator overflow".into()))?;
        Ok(Self { nums, den })
    }

    /// Smallest nonzero absolute entry, reduced; `None` for the zero vector.
    pub fn min_abs_entry(&self) -> Option<Ratio64> {
        self.nums
            .iter()
            .filter(|&&n| n != 0)
            .map(|&n| n.abs())
            .min()
            .map(|n| Ratio64::new(n, self.den))
    }
}

impl fmt::Display for CoeffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, s) in self.entry_strings().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

//! Threshold sets, greedy sets, and truncation values.
//!
//! For a coefficient vector `c` and a level `a`, the threshold set
//! `A(a, c) = {n : |c_n| ≥ a}` collects the coordinates that survive
//! thresholding at `a`. A *greedy set* is any `A` whose members all dominate
//! the non-members in absolute value; greedy sets are exactly the sets a
//! largest-coefficients-first algorithm can select, ties resolved freely.
//! All comparisons here are exact integer arithmetic on the rational entries.

use crate::basis::Basis;
use crate::coeff::{CoeffVector, IndexSet};
use crate::error::{Error, Result};
use crate::grid::Level;

/// The threshold set `A(a, c) = {n : |c_n| ≥ a}` (1-based indices).
pub fn support_set(c: &CoeffVector, a: &Level) -> IndexSet {
    let mut mask = 0u32;
    for (i, &num) in c.nums().iter().enumerate() {
        // |num/den| ≥ a_num/a_den  ⇔  |num|·a_den ≥ a_num·den, exactly.
        if (num.abs() as i128) * (a.denom() as i128) >= (a.numer() as i128) * (c.den() as i128) {
            mask |= 1 << i;
        }
    }
    IndexSet::from_mask(c.dim(), mask)
}

/// Is every member of `set` at least as large (in |coefficient|) as every
/// non-member? The empty set qualifies vacuously.
pub fn is_greedy_set(c: &CoeffVector, set: &IndexSet) -> bool {
    let mut min_in = i64::MAX;
    let mut max_out = 0i64;
    for (i, &num) in c.nums().iter().enumerate() {
        if set.contains(i + 1) {
            min_in = min_in.min(num.abs());
        } else {
            max_out = max_out.max(num.abs());
        }
    }
    min_in >= max_out
}

/// All greedy sets of a coefficient vector, enumerated lazily.
///
/// Coordinates are grouped into ties by absolute value. Every greedy set is
/// the union of the top `j` tie classes plus a nonempty subset of class
/// `j + 1` (or the empty set). Enumeration is deterministic: the empty set
/// first, then classes in descending value, subsets of a class in ascending
/// bitmask order.
#[derive(Debug, Clone)]
pub struct GreedySetFamily {
    dim: usize,
    /// Tie-class masks in strictly descending absolute value.
    classes: Vec<u32>,
}

impl GreedySetFamily {
    pub fn new(c: &CoeffVector) -> Self {
        let mut values: Vec<i64> = c.nums().iter().map(|n| n.abs()).collect();
        values.sort_unstable_by(|a, b| b.cmp(a));
        values.dedup();
        let classes = values
            .iter()
            .map(|v| {
                let mut mask = 0u32;
                for (i, &num) in c.nums().iter().enumerate() {
                    if num.abs() == *v {
                        mask |= 1 << i;
                    }
                }
                mask
            })
            .collect();
        Self { dim: c.dim(), classes }
    }

    /// Number of greedy sets: `1 + Σ_j (2^{|T_j|} − 1)`.
    pub fn count(&self) -> u64 {
        1 + self
            .classes
            .iter()
            .map(|m| (1u64 << m.count_ones()) - 1)
            .sum::<u64>()
    }

    pub fn iter(&self) -> GreedySetIter<'_> {
        GreedySetIter { family: self, state: IterState::Empty }
    }
}

#[derive(Debug)]
enum IterState {
    Empty,
    /// Classes `0..class` are fully included; `sub` is the current nonempty
    /// submask of `classes[class]`.
    Class { class: usize, prefix: u32, sub: u32 },
    Done,
}

/// Lazy iterator over greedy sets in canonical order.
#[derive(Debug)]
pub struct GreedySetIter<'a> {
    family: &'a GreedySetFamily,
    state: IterState,
}

impl Iterator for GreedySetIter<'_> {
    type Item = IndexSet;

    fn next(&mut self) -> Option<IndexSet> {
        match self.state {
            IterState::Empty => {
                self.state = match self.family.classes.first() {
                    Some(&t) => IterState::Class { class: 0, prefix: 0, sub: t & t.wrapping_neg() },
                    None => IterState::Done,
                };
                Some(IndexSet::empty(self.family.dim))
            }
            IterState::Class { class, prefix, sub } => {
                let out = IndexSet::from_mask(self.family.dim, prefix | sub);
                let t = self.family.classes[class];
                // Next submask of t in ascending numeric order.
                let next_sub = sub.wrapping_sub(t) & t;
                self.state = if next_sub != 0 {
                    IterState::Class { class, prefix, sub: next_sub }
                } else if class + 1 < self.family.classes.len() {
                    let nt = self.family.classes[class + 1];
                    IterState::Class {
                        class: class + 1,
                        prefix: prefix | t,
                        sub: nt & nt.wrapping_neg(),
                    }
                } else {
                    IterState::Done
                };
                Some(out)
            }
            IterState::Done => None,
        }
    }
}

/// `min_{n∈A} |c_n| · ‖𝟙_{ε(c),A}‖` — the quantity the truncation
/// inequality compares against `K‖f‖`.
pub fn truncation_value(basis: &Basis, c: &CoeffVector, set: &IndexSet) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::EmptySet("truncation value needs a nonempty index set"));
    }
    // Entries share one denominator, so the minimum reduces to numerators.
    let min_num = set
        .indices()
        .iter()
        .map(|&i| c.nums()[i - 1].abs())
        .min()
        .expect("nonempty set");
    let indicator = basis.indicator(&c.sign_vector(), set);
    let min_f = min_num as f64 / c.den() as f64;
    Ok(min_f * basis.norm_of(&indicator))
}

/// `a · ‖𝟙_{ε(c),A(a,c)}‖`, or `None` when the threshold set is empty
/// (the bound is vacuous there).
pub fn rho_numerator(basis: &Basis, c: &CoeffVector, a: &Level) -> Option<f64> {
    let set = support_set(c, a);
    if set.is_empty() {
        return None;
    }
    let indicator = basis.indicator(&c.sign_vector(), &set);
    Some(a.as_f64() * basis.norm_of(&indicator))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(nums: Vec<i64>, den: i64) -> CoeffVector {
        CoeffVector::new(nums, den).unwrap()
    }

    #[test]
    fn support_set_uses_exact_comparison() {
        // c = (1, -1/2, 1/4).
        let c = coeffs(vec![4, -2, 1], 4);
        let at = |num, den| support_set(&c, &Level::new(num, den).unwrap()).indices();
        assert_eq!(at(1, 1), vec![1]);
        assert_eq!(at(1, 2), vec![1, 2]); // boundary |−1/2| ≥ 1/2 included
        assert_eq!(at(1, 4), vec![1, 2, 3]);
        assert_eq!(at(1, 3), vec![1, 2]); // 1/4 < 1/3 excluded, exactly
    }

    #[test]
    fn greedy_family_matches_hand_enumeration() {
        // Strictly decreasing values: a chain of prefixes.
        let strict = GreedySetFamily::new(&coeffs(vec![3, 2, 1], 1));
        let sets: Vec<Vec<usize>> = strict.iter().map(|s| s.indices()).collect();
        assert_eq!(sets, vec![vec![], vec![1], vec![1, 2], vec![1, 2, 3]]);
        assert_eq!(strict.count(), 4);

        // A tie at the top: both singletons appear.
        let tied = GreedySetFamily::new(&coeffs(vec![1, 1, 0], 1));
        let sets: Vec<Vec<usize>> = tied.iter().map(|s| s.indices()).collect();
        assert_eq!(
            sets,
            vec![vec![], vec![1], vec![2], vec![1, 2], vec![1, 2, 3]]
        );
        assert_eq!(tied.count(), 5);

        // Total tie at zero: every subset is greedy.
        let zero = GreedySetFamily::new(&CoeffVector::zero(3));
        assert_eq!(zero.count(), 8);
        assert_eq!(zero.iter().count(), 8);
    }

    #[test]
    fn family_members_satisfy_the_defining_inequality() {
        let c = coeffs(vec![2, -2, 1, 0], 2);
        let family = GreedySetFamily::new(&c);
        let members: Vec<u32> = family.iter().map(|s| s.mask()).collect();
        assert_eq!(members.len() as u64, family.count());
        // Every enumerated set is greedy, and every greedy mask is enumerated.
        for mask in 0u32..16 {
            let set = IndexSet::from_mask(4, mask);
            assert_eq!(is_greedy_set(&c, &set), members.contains(&mask));
        }
    }

    #[test]
    fn threshold_sets_are_greedy() {
        let c = coeffs(vec![3, -1, 2, 0], 3);
        for level in crate::grid::GridSpec::new(6).unwrap().levels() {
            let a = support_set(&c, &level);
            assert!(is_greedy_set(&c, &a));
        }
    }

    #[test]
    fn truncation_values_match_hand_computations() {
        let l1 = Basis::canonical(
            crate::space::QuasiNormedSpace::new(
                3,
                1.0,
                crate::space::NormDescriptor::Lp { q: 1.0 },
            )
            .unwrap(),
        )
        .unwrap();
        let all = IndexSet::full(3);
        assert_eq!(truncation_value(&l1, &coeffs(vec![1, 1, 1], 1), &all).unwrap(), 3.0);
        let front = IndexSet::from_indices(3, &[1, 2]).unwrap();
        assert_eq!(
            truncation_value(&l1, &coeffs(vec![1, 2, 0], 2), &front).unwrap(),
            1.0
        );
        assert!(truncation_value(&l1, &coeffs(vec![1, 1, 1], 1), &IndexSet::empty(3)).is_err());

        // Conditional example: min 1 times ‖s_1 + s_3‖ = 2.
        let summing = Basis::summing(3).unwrap();
        let odd = IndexSet::from_indices(3, &[1, 3]).unwrap();
        assert_eq!(
            truncation_value(&summing, &coeffs(vec![1, 0, 1], 1), &odd).unwrap(),
            2.0
        );
    }

    #[test]
    fn rho_numerator_is_vacuous_when_nothing_survives() {
        let summing = Basis::summing(3).unwrap();
        let c = coeffs(vec![1, -1, 1], 2); // all entries 1/2
        let a = Level::new(1, 1).unwrap();
        assert_eq!(rho_numerator(&summing, &c, &a), None);
        let half = Level::new(1, 2).unwrap();
        // A = {1,2,3}, indicator (1,−1,1) → ambient (1,0,1), max norm 1.
        assert_eq!(rho_numerator(&summing, &c, &half), Some(0.5));
    }
}

//! Grid search for threshold constants of a basis.
//!
//! For a basis `x_1, …, x_N` with coefficient cube `𝒬 = {f : |x_n^*(f)| ≤ 1}`
//! and threshold sets `A(a, f) = {n : |x_n^*(f)| ≥ a}`, this module estimates
//!
//! * `φ(a)` — largest `‖S_A f‖ / ‖f‖` over `f ∈ 𝒬` and `∅ ≠ A ⊆ A(a, f)`,
//! * `θ(a)` — same with `A = A(a, f)` fixed,
//! * `λ(a)` — largest `min_{n∈A(a,f)} |x_n^*(f)| · ‖𝟙_{ε(f),A(a,f)}‖ / ‖f‖`,
//! * `ρ(a)` — largest `a · ‖𝟙_{ε(f),A(a,f)}‖ / ‖f‖`,
//! * `Γ` — largest `‖𝟙_{ε,A}‖ / ‖𝟙_{ε,A} + g‖` over signed indicators and
//!   perturbations `g ∈ 𝒬` supported off `A`, plus its one-sign restriction
//!   (`ε ≡ +1`) and its scaled variant where `g` may leave the unit cube,
//! * `Λ = max_a λ(a)` over on-grid levels, and
//! * the nested-indicator constant `max ‖𝟙_{ε,B}‖ / ‖𝟙_{ε,A}‖`, `B ⊆ A`.
//!
//! Coefficients range over the rational grid `{k/m : −m ≤ k ≤ m}` per
//! coordinate. Every reported value is a certified lower bound for the
//! grid-restricted supremum, and in [`Mode::Exhaustive`] it equals that
//! supremum: the search enumerates every candidate. When the enumeration
//! exceeds the budget, [`Mode::Sampled`] draws random grid points and
//! refines them by coordinate ascent — still a valid lower bound, no longer
//! exact. Identical inputs produce identical estimates, witnesses included:
//! ties are broken by the lexicographically smallest witness.

use crate::basis::Basis;
use crate::coeff::{CoeffVector, IndexSet, SignPattern};
use crate::error::{Error, Result};
use crate::greedy::support_set;
use crate::grid::{GridSpec, Level};
use crate::linalg::Ratio64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Which threshold constant an estimate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quantity {
    #[serde(rename = "phi")]
    Phi,
    #[serde(rename = "theta")]
    Theta,
    #[serde(rename = "lambda")]
    Lambda,
    #[serde(rename = "rho")]
    Rho,
    #[serde(rename = "gamma")]
    Gamma,
    /// `Λ = max_a λ(a)` over on-grid levels.
    #[serde(rename = "Lambda")]
    LambdaSup,
    /// Nested signed indicators: `max ‖𝟙_{ε,B}‖/‖𝟙_{ε,A}‖` over `B ⊆ A`.
    #[serde(rename = "succ")]
    Succ,
    /// Γ with the perturbation allowed outside the unit cube (scaled grid).
    #[serde(rename = "qglc-v")]
    QglcV,
    /// Γ restricted to the all-plus sign pattern.
    #[serde(rename = "one-sign")]
    OneSign,
}

impl Quantity {
    /// Stable textual tag, used on the command line and in serialized records.
    pub fn token(self) -> &'static str {
        match self {
            Quantity::Phi => "phi",
            Quantity::Theta => "theta",
            Quantity::Lambda => "lambda",
            Quantity::Rho => "rho",
            Quantity::Gamma => "gamma",
            Quantity::LambdaSup => "Lambda",
            Quantity::Succ => "succ",
            Quantity::QglcV => "qglc-v",
            Quantity::OneSign => "one-sign",
        }
    }

    /// Parses a command-line quantity token (`one-sign` is internal-only).
    pub fn parse_token(s: &str) -> Result<Quantity> {
        Ok(match s {
            "phi" => Quantity::Phi,
            "theta" => Quantity::Theta,
            "lambda" => Quantity::Lambda,
            "rho" => Quantity::Rho,
            "gamma" => Quantity::Gamma,
            "Lambda" => Quantity::LambdaSup,
            "succ" => Quantity::Succ,
            "qglc-v" => Quantity::QglcV,
            _ => return Err(Error::UnknownQuantity(s.to_string())),
        })
    }

    /// Does the quantity take a threshold level `a`?
    pub fn is_leveled(self) -> bool {
        matches!(
            self,
            Quantity::Phi | Quantity::Theta | Quantity::Lambda | Quantity::Rho
        )
    }
}

/// Search limits. Defaults: exhaustive up to 10^7 enumerated points, else
/// 10^6 random samples refined by 50 coordinate-ascent sweeps, seed 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOpts {
    pub budget: u64,
    pub samples: u64,
    pub sweeps: u32,
    pub seed: u64,
}

impl Default for SearchOpts {
    fn default() -> Self {
        Self { budget: 10_000_000, samples: 1_000_000, sweeps: 50, seed: 0 }
    }
}

/// How an estimate was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Every grid candidate was enumerated; the value is the exact
    /// grid-restricted supremum.
    Exhaustive { m: i64 },
    /// Random sampling plus coordinate ascent; a lower bound only.
    Sampled { m: i64, budget: u64, seed: u64 },
}

impl Mode {
    pub fn m(&self) -> i64 {
        match self {
            Mode::Exhaustive { m } | Mode::Sampled { m, .. } => *m,
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Mode::Exhaustive { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Mode::Exhaustive { .. } => "exhaustive",
            Mode::Sampled { .. } => "sampled",
        }
    }
}

/// Maximizer data sufficient to reproduce an estimate's value.
///
/// The `coeffs` slot holds, depending on the quantity: the vector `f` itself
/// (φ, θ, λ, ρ, Λ), the perturbation `g` (Γ, one-sign, scaled variant), or
/// the inner indicator `𝟙_{ε,B}` (nested-indicator constant). `set` is `A`
/// and `signs` lists `ε` on `A` in ascending index order.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub coeffs: CoeffVector,
    pub set: IndexSet,
    pub signs: Vec<i8>,
    /// Scale factor applied to the perturbation (scaled-Γ only).
    pub scale: Option<Ratio64>,
    /// The level attaining the max (Λ only).
    pub at_level: Option<Level>,
}

impl Witness {
    /// Expands the on-set signs into a full sign pattern (+1 off the set).
    pub fn full_signs(&self, dim: usize) -> SignPattern {
        let mut v = vec![1i8; dim];
        for (pos, idx) in self.set.indices().iter().enumerate() {
            v[idx - 1] = self.signs[pos];
        }
        SignPattern::new(v).expect("signs are ±1")
    }
}

/// A certified lower bound together with the witness that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub quantity: Quantity,
    pub level: Option<Level>,
    pub value: f64,
    pub witness: Witness,
    pub mode: Mode,
}

impl Estimate {
    pub fn m(&self) -> i64 {
        self.mode.m()
    }
}

/// Default scale set for the scaled-Γ search: `{1/4, 1/2, 1, 2, 4}`.
pub fn default_scales() -> Vec<Ratio64> {
    vec![
        Ratio64::new(1, 4),
        Ratio64::new(1, 2),
        Ratio64::new(1, 1),
        Ratio64::new(2, 1),
        Ratio64::new(4, 1),
    ]
}

// ---------------------------------------------------------------------------
// Candidate bookkeeping
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct Cand {
    value: f64,
    coeffs: CoeffVector,
    set: IndexSet,
    signs: Vec<i8>,
    scale: Option<Ratio64>,
    at_level: Option<Level>,
}

impl Cand {
    fn into_witness(self) -> (f64, Witness) {
        (
            self.value,
            Witness {
                coeffs: self.coeffs,
                set: self.set,
                signs: self.signs,
                scale: self.scale,
                at_level: self.at_level,
            },
        )
    }
}

/// Entrywise rational comparison of coefficient vectors (dens may differ).
fn coeffs_cmp(a: &CoeffVector, b: &CoeffVector) -> Ordering {
    for (x, y) in a.nums().iter().zip(b.nums()) {
        let lhs = (*x as i128) * (b.den() as i128);
        let rhs = (*y as i128) * (a.den() as i128);
        match lhs.cmp(&rhs) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}

fn scale_cmp(a: &Option<Ratio64>, b: &Option<Ratio64>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(x), Some(y)) => x.cmp(y),
    }
}

/// Total witness order used for tie-breaking: coefficients, then the index
/// set as a sorted list, then signs, then scale, then level.
fn cand_key_cmp(a: &Cand, b: &Cand) -> Ordering {
    coeffs_cmp(&a.coeffs, &b.coeffs)
        .then_with(|| a.set.cmp_as_sorted_lists(&b.set))
        .then_with(|| a.signs.cmp(&b.signs))
        .then_with(|| scale_cmp(&a.scale, &b.scale))
        .then_with(|| a.at_level.cmp(&b.at_level))
}

/// Keeps the candidate with the larger value; on an exact value tie, the
/// lexicographically smaller witness.
fn consider(acc: &mut Option<Cand>, value: f64, build: impl FnOnce() -> Cand) {
    if !value.is_finite() {
        return;
    }
    match acc {
        None => {
            let mut c = build();
            c.value = value;
            *acc = Some(c);
        }
        Some(best) => {
            if value > best.value {
                let mut c = build();
                c.value = value;
                *acc = Some(c);
            } else if value == best.value {
                let mut c = build();
                c.value = value;
                if cand_key_cmp(&c, best) == Ordering::Less {
                    *acc = Some(c);
                }
            }
        }
    }
}

fn merge_opt(a: Option<Cand>, b: Option<Cand>) -> Option<Cand> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if y.value > x.value
                || (y.value == x.value && cand_key_cmp(&y, &x) == Ordering::Less)
            {
                Some(y)
            } else {
                Some(x)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Grid enumeration helpers
// ---------------------------------------------------------------------------

fn decode_point(mut idx: u64, n: usize, m: i64) -> Vec<i64> {
    let base = (2 * m + 1) as u64;
    let mut nums = vec![0i64; n];
    for k in (0..n).rev() {
        nums[k] = (idx % base) as i64 - m;
        idx /= base;
    }
    nums
}

fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Number of grid vectors, or `None` on overflow (treated as over budget).
fn grid_size(n: usize, m: i64) -> Option<u64> {
    checked_pow((2 * m + 1) as u64, n)
}

fn check_budget(opts: &SearchOpts) -> Result<()> {
    if opts.budget == 0 {
        return Err(Error::ZeroBudget);
    }
    Ok(())
}

fn within_budget(size: Option<u64>, budget: u64) -> bool {
    matches!(size, Some(s) if s <= budget)
}

// ---------------------------------------------------------------------------
// Leveled quantities: φ, θ, λ, ρ
// ---------------------------------------------------------------------------

/// Best candidate for one grid vector `f` at level `a`. Returns the value
/// and the chosen set `A` (as a mask). The norm of `f` is computed once.
fn eval_level_point(
    basis: &Basis,
    q: Quantity,
    a: &Level,
    f: &CoeffVector,
) -> Option<(f64, u32)> {
    if f.is_zero() {
        return None;
    }
    let den = basis.norm_of(f);
    if den <= 0.0 || !den.is_finite() {
        return None;
    }
    let aset = support_set(f, a);
    if aset.is_empty() {
        return None;
    }
    match q {
        Quantity::Phi => {
            // Exhausts all nonempty A ⊆ A(a,f); ties prefer the set that is
            // smaller as a sorted index list.
            let t = aset.mask();
            let mut best: Option<(f64, u32)> = None;
            let mut s = t;
            loop {
                let val = basis.norm_of_masked(f, &IndexSet::from_mask(f.dim(), s)) / den;
                best = match best {
                    None => Some((val, s)),
                    Some((bv, bm)) => {
                        if val > bv
                            || (val == bv
                                && IndexSet::from_mask(f.dim(), s)
                                    .cmp_as_sorted_lists(&IndexSet::from_mask(f.dim(), bm))
                                    == Ordering::Less)
                        {
                            Some((val, s))
                        } else {
                            Some((bv, bm))
                        }
                    }
                };
                s = (s - 1) & t;
                if s == 0 {
                    break;
                }
            }
            best
        }
        Quantity::Theta => {
            let val = basis.norm_of_masked(f, &aset) / den;
            Some((val, aset.mask()))
        }
        Quantity::Lambda => {
            let min_num = aset
                .indices()
                .iter()
                .map(|&i| f.nums()[i - 1].abs())
                .min()
                .expect("nonempty threshold set");
            let ind = basis.indicator(&f.sign_vector(), &aset);
            let val = (min_num as f64 / f.den() as f64) * basis.norm_of(&ind) / den;
            Some((val, aset.mask()))
        }
        Quantity::Rho => {
            let ind = basis.indicator(&f.sign_vector(), &aset);
            let val = a.as_f64() * basis.norm_of(&ind) / den;
            Some((val, aset.mask()))
        }
        _ => unreachable!("not a leveled quantity"),
    }
}

fn level_cand(basis: &Basis, f: &CoeffVector, value: f64, amask: u32) -> Cand {
    let set = IndexSet::from_mask(basis.dim(), amask);
    let signs = f.sign_vector().on_set(&set);
    Cand { value, coeffs: f.clone(), set, signs, scale: None, at_level: None }
}

/// Exploratory variant of [`eval_level_point`] for sampled φ: additionally
/// tries singletons and greedy single-element removals instead of the full
/// subset sweep (which the budget has ruled out).
fn eval_level_point_sampled(
    basis: &Basis,
    q: Quantity,
    a: &Level,
    f: &CoeffVector,
) -> Option<(f64, u32)> {
    if q != Quantity::Phi {
        return eval_level_point(basis, q, a, f);
    }
    if f.is_zero() {
        return None;
    }
    let den = basis.norm_of(f);
    if den <= 0.0 || !den.is_finite() {
        return None;
    }
    let aset = support_set(f, a);
    if aset.is_empty() {
        return None;
    }
    let ratio = |mask: u32| basis.norm_of_masked(f, &IndexSet::from_mask(f.dim(), mask)) / den;
    let mut best = (ratio(aset.mask()), aset.mask());
    // Singletons.
    for i in aset.indices() {
        let mask = 1u32 << (i - 1);
        let val = ratio(mask);
        if val > best.0 {
            best = (val, mask);
        }
    }
    // Steepest single-element removal from the full threshold set.
    let mut cur = (best.0.max(ratio(aset.mask())), aset.mask());
    loop {
        if cur.1.count_ones() <= 1 {
            break;
        }
        let mut improved: Option<(f64, u32)> = None;
        let mut bits = cur.1;
        while bits != 0 {
            let bit = bits & bits.wrapping_neg();
            bits &= bits - 1;
            let cand_mask = cur.1 & !bit;
            let val = ratio(cand_mask);
            if val > cur.0 && improved.is_none_or(|(iv, _)| val > iv) {
                improved = Some((val, cand_mask));
            }
        }
        match improved {
            Some(next) => {
                cur = next;
                if cur.0 > best.0 {
                    best = cur;
                }
            }
            None => break,
        }
    }
    Some(best)
}

fn exhaustive_level(basis: &Basis, q: Quantity, a: &Level, grid: &GridSpec) -> Option<Cand> {
    let n = basis.dim();
    let m = grid.m();
    let total = grid_size(n, m).expect("budget check admitted this size");
    (0..total)
        .into_par_iter()
        .fold(
            || None,
            |mut acc, idx| {
                let nums = decode_point(idx, n, m);
                let f = CoeffVector::new(nums, m).expect("positive denominator");
                if let Some((val, amask)) = eval_level_point(basis, q, a, &f) {
                    consider(&mut acc, val, || level_cand(basis, &f, val, amask));
                }
                acc
            },
        )
        .reduce(|| None, merge_opt)
}

fn sampled_level(
    basis: &Basis,
    q: Quantity,
    a: &Level,
    grid: &GridSpec,
    opts: &SearchOpts,
) -> Result<Cand> {
    if opts.samples == 0 {
        return Err(Error::ZeroBudget);
    }
    let n = basis.dim();
    let m = grid.m();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    // Deterministic baseline: f = x_1 always yields a candidate.
    let mut base_nums = vec![0i64; n];
    base_nums[0] = m;
    let mut cur = CoeffVector::new(base_nums, m).expect("positive denominator");
    let mut cur_best =
        eval_level_point_sampled(basis, q, a, &cur).expect("x_1 is a valid candidate");

    for _ in 0..opts.samples {
        let nums: Vec<i64> = (0..n).map(|_| rng.gen_range(-m..=m)).collect();
        let f = CoeffVector::new(nums, m).expect("positive denominator");
        if let Some(found) = eval_level_point_sampled(basis, q, a, &f) {
            if found.0 > cur_best.0 {
                cur_best = found;
                cur = f;
            }
        }
    }

    // Coordinate ascent from the incumbent.
    let mut nums = cur.nums().to_vec();
    for _ in 0..opts.sweeps {
        let mut improved = false;
        for coord in 0..n {
            let orig = nums[coord];
            let mut best_here: Option<(f64, u32, i64)> = None;
            for v in -m..=m {
                if v == orig {
                    continue;
                }
                nums[coord] = v;
                let f = CoeffVector::new(nums.clone(), m).expect("positive denominator");
                if let Some((val, mask)) = eval_level_point_sampled(basis, q, a, &f) {
                    if val > cur_best.0 && best_here.is_none_or(|(bv, _, _)| val > bv) {
                        best_here = Some((val, mask, v));
                    }
                }
            }
            match best_here {
                Some((val, mask, v)) => {
                    nums[coord] = v;
                    cur_best = (val, mask);
                    improved = true;
                }
                None => nums[coord] = orig,
            }
        }
        if !improved {
            break;
        }
    }
    let f = CoeffVector::new(nums, m).expect("positive denominator");
    Ok(level_cand(basis, &f, cur_best.0, cur_best.1))
}

fn estimate_leveled(
    basis: &Basis,
    q: Quantity,
    a: &Level,
    grid: &GridSpec,
    opts: &SearchOpts,
) -> Result<Estimate> {
    check_budget(opts)?;
    grid.require_on_grid(*a)?;
    let size = grid_size(basis.dim(), grid.m());
    let (cand, mode) = if within_budget(size, opts.budget) {
        let cand = exhaustive_level(basis, q, a, grid)
            .expect("the grid contains x_1, which is always a candidate");
        (cand, Mode::Exhaustive { m: grid.m() })
    } else {
        let cand = sampled_level(basis, q, a, grid, opts)?;
        (cand, Mode::Sampled { m: grid.m(), budget: opts.budget, seed: opts.seed })
    };
    let (value, witness) = cand.into_witness();
    Ok(Estimate { quantity: q, level: Some(*a), value, witness, mode })
}

/// `φ̂(a)`: the full projection constant at level `a` on the grid.
pub fn estimate_phi(basis: &Basis, a: &Level, grid: &GridSpec, opts: &SearchOpts) -> Result<Estimate> {
    estimate_leveled(basis, Quantity::Phi, a, grid, opts)
}

/// `θ̂(a)`: projections onto the exact threshold set only.
pub fn estimate_theta(basis: &Basis, a: &Level, grid: &GridSpec, opts: &SearchOpts) -> Result<Estimate> {
    estimate_leveled(basis, Quantity::Theta, a, grid, opts)
}

/// `λ̂(a)`: smallest retained coefficient times the indicator norm.
pub fn estimate_lambda(basis: &Basis, a: &Level, grid: &GridSpec, opts: &SearchOpts) -> Result<Estimate> {
    estimate_leveled(basis, Quantity::Lambda, a, grid, opts)
}

/// `ρ̂(a)`: the level itself times the indicator norm.
pub fn estimate_rho(basis: &Basis, a: &Level, grid: &GridSpec, opts: &SearchOpts) -> Result<Estimate> {
    estimate_leveled(basis, Quantity::Rho, a, grid, opts)
}

/// `Λ̂ = max_a λ̂(a)` over the on-grid levels `a = j/m`.
///
/// Ties across levels resolve to the smallest level, then the smallest
/// witness; the result's witness records the attaining level.
pub fn estimate_lambda_sup(basis: &Basis, grid: &GridSpec, opts: &SearchOpts) -> Result<Estimate> {
    check_budget(opts)?;
    let mut best: Option<Estimate> = None;
    for level in grid.levels() {
        let leg = estimate_lambda(basis, &level, grid, opts)?;
        let replace = match &best {
            None => true,
            Some(b) => {
                leg.value > b.value
                    || (leg.value == b.value
                        && level < b.level.expect("λ legs carry levels"))
            }
        };
        if replace {
            best = Some(leg);
        }
    }
    let leg = best.expect("grids have at least one level");
    let at = leg.level.expect("λ legs carry levels");
    let exhaustive = leg.mode.is_exhaustive();
    let mut witness = leg.witness;
    witness.at_level = Some(at);
    Ok(Estimate {
        quantity: Quantity::LambdaSup,
        level: None,
        value: leg.value,
        witness,
        mode: if exhaustive {
            Mode::Exhaustive { m: grid.m() }
        } else {
            Mode::Sampled { m: grid.m(), budget: opts.budget, seed: opts.seed }
        },
    })
}

// ---------------------------------------------------------------------------
// Indicator-perturbation quantities: Γ, one-sign, scaled Γ
// ---------------------------------------------------------------------------

/// Candidate builder for the perturbation picture: the combined vector `h`
/// equals `𝟙_{ε,A}` on `A` and the perturbation on the complement; the
/// witness stores the perturbation `g = h·1_{A^c}` alone.
fn gamma_cand(basis: &Basis, h: &CoeffVector, value: f64, amask: u32, scale: Option<Ratio64>) -> Cand {
    let set = IndexSet::from_mask(basis.dim(), amask);
    let g = h.project(&set.complement());
    let signs = h.sign_vector().on_set(&set);
    Cand { value, coeffs: g, set, signs, scale, at_level: None }
}

/// Shared exhaustive engine for Γ and its one-sign restriction.
///
/// Iterates the same grid as `φ̂(1)`: a combined vector `h` with `±1`
/// entries on `A` and arbitrary grid entries elsewhere is exactly a grid
/// vector with `A ⊆ A(1, h)`, so the candidate ratios coincide with the
/// `φ̂(1)` candidate ratios term by term.
fn exhaustive_gamma(basis: &Basis, grid: &GridSpec, one_sign: bool) -> Option<Cand> {
    let n = basis.dim();
    let m = grid.m();
    let total = grid_size(n, m).expect("budget check admitted this size");
    (0..total)
        .into_par_iter()
        .fold(
            || None,
            |mut acc, idx| {
                let nums = decode_point(idx, n, m);
                let h = CoeffVector::new(nums, m).expect("positive denominator");
                if h.is_zero() {
                    return acc;
                }
                let den = basis.norm_of(&h);
                if den <= 0.0 || !den.is_finite() {
                    return acc;
                }
                // Admissible A: coordinates with |h_n| = 1 (sign +1 only in
                // the one-sign case).
                let mut t = 0u32;
                for (i, &num) in h.nums().iter().enumerate() {
                    if num == m || (!one_sign && num == -m) {
                        t |= 1 << i;
                    }
                }
                if t == 0 {
                    return acc;
                }
                let mut s = t;
                loop {
                    let val =
                        basis.norm_of_masked(&h, &IndexSet::from_mask(n, s)) / den;
                    consider(&mut acc, val, || gamma_cand(basis, &h, val, s, None));
                    s = (s - 1) & t;
                    if s == 0 {
                        break;
                    }
                }
                acc
            },
        )
        .reduce(|| None, merge_opt)
}

fn sampled_gamma(
    basis: &Basis,
    grid: &GridSpec,
    opts: &SearchOpts,
    one_sign: bool,
) -> Result<Cand> {
    if opts.samples == 0 {
        return Err(Error::ZeroBudget);
    }
    let n = basis.dim();
    let m = grid.m();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let admissible = |h: &CoeffVector| -> u32 {
        let mut t = 0u32;
        for (i, &num) in h.nums().iter().enumerate() {
            if num == m || (!one_sign && num == -m) {
                t |= 1 << i;
            }
        }
        t
    };
    let eval = |h: &CoeffVector| -> Option<(f64, u32)> {
        if h.is_zero() {
            return None;
        }
        let den = basis.norm_of(h);
        if den <= 0.0 || !den.is_finite() {
            return None;
        }
        let t = admissible(h);
        if t == 0 {
            return None;
        }
        // Full admissible set, its singletons, then steepest removals.
        let ratio = |mask: u32| basis.norm_of_masked(h, &IndexSet::from_mask(n, mask)) / den;
        let mut best = (ratio(t), t);
        let mut bits = t;
        while bits != 0 {
            let bit = bits & bits.wrapping_neg();
            bits &= bits - 1;
            let val = ratio(bit);
            if val > best.0 {
                best = (val, bit);
            }
        }
        let mut cur = (ratio(t), t);
        while cur.1.count_ones() > 1 {
            let mut improved: Option<(f64, u32)> = None;
            let mut bs = cur.1;
            while bs != 0 {
                let bit = bs & bs.wrapping_neg();
                bs &= bs - 1;
                let cand_mask = cur.1 & !bit;
                let val = ratio(cand_mask);
                if val > cur.0 && improved.is_none_or(|(iv, _)| val > iv) {
                    improved = Some((val, cand_mask));
                }
            }
            match improved {
                Some(next) => {
                    cur = next;
                    if cur.0 > best.0 {
                        best = cur;
                    }
                }
                None => break,
            }
        }
        Some(best)
    };

    // Baseline: h = x_1 (A = {1}, g = 0, ratio 1).
    let mut base_nums = vec![0i64; n];
    base_nums[0] = m;
    let mut cur = CoeffVector::new(base_nums, m).expect("positive denominator");
    let mut cur_best = eval(&cur).expect("x_1 is a valid candidate");

    for _ in 0..opts.samples {
        let nums: Vec<i64> = (0..n).map(|_| rng.gen_range(-m..=m)).collect();
        let h = CoeffVector::new(nums, m).expect("positive denominator");
        if let Some(found) = eval(&h) {
            if found.0 > cur_best.0 {
                cur_best = found;
                cur = h;
            }
        }
    }

    let mut nums = cur.nums().to_vec();
    for _ in 0..opts.sweeps {
        let mut improved = false;
        for coord in 0..n {
            let orig = nums[coord];
            let mut best_here: Option<(f64, u32, i64)> = None;
            for v in -m..=m {
                if v == orig {
                    continue;
                }
                nums[coord] = v;
                let h = CoeffVector::new(nums.clone(), m).expect("positive denominator");
                if let Some((val, mask)) = eval(&h) {
                    if val > cur_best.0 && best_here.is_none_or(|(bv, _, _)| val > bv) {
                        best_here = Some((val, mask, v));
                    }
                }
            }
            match best_here {
                Some((val, mask, v)) => {
                    nums[coord] = v;
                    cur_best = (val, mask);
                    improved = true;
                }
                None => nums[coord] = orig,
            }
        }
        if !improved {
            break;
        }
    }
    let h = CoeffVector::new(nums, m).expect("positive denominator");
    Ok(gamma_cand(basis, &h, cur_best.0, cur_best.1, None))
}

fn estimate_gamma_inner(
    basis: &Basis,
    grid: &GridSpec,
    opts: &SearchOpts,
    one_sign: bool,
) -> Result<Estimate> {
    check_budget(opts)?;
    let size = grid_size(basis.dim(), grid.m());
    let (cand, mode) = if within_budget(size, opts.budget) {
        let cand = exhaustive_gamma(basis, grid, one_sign)
            .expect("the grid contains x_1, which is always a candidate");
        (cand, Mode::Exhaustive { m: grid.m() })
    } else {
        let cand = sampled_gamma(basis, grid, opts, one_sign)?;
        (cand, Mode::Sampled { m: grid.m(), budget: opts.budget, seed: opts.seed })
    };
    let (value, witness) = cand.into_witness();
    Ok(Estimate {
        quantity: if one_sign { Quantity::OneSign } else { Quantity::Gamma },
        level: None,
        value,
        witness,
        mode,
    })
}

/// `Γ̂`: worst ratio `‖𝟙_{ε,A}‖ / ‖𝟙_{ε,A} + g‖` over signed indicators
/// and grid perturbations `g ∈ 𝒬` supported off `A`.
pub fn estimate_gamma(basis: &Basis, grid: &GridSpec, opts: &SearchOpts) -> Result<Estimate> {
    estimate_gamma_inner(basis, grid, opts, false)
}

/// One-sign restriction of `Γ̂` (`ε ≡ +1`).
pub fn estimate_one_sign_k(basis: &Basis, grid: &GridSpec, opts: &SearchOpts) -> Result<Estimate> {
    estimate_gamma_inner(basis, grid, opts, true)
}

/// Candidate count for the scaled-Γ search.
fn qglc_v_size(n: usize, m: i64, scales: usize) -> Option<u64> {
    // Σ over nonempty A of 2^|A| (2m+1)^(N−|A|) = (2m+3)^N − (2m+1)^N.
    let with = checked_pow((2 * m + 3) as u64, n)?;
    let without = checked_pow((2 * m + 1) as u64, n)?;
    with.checked_sub(without)?.checked_mul(scales as u64)
}

/// Builds the combined vector for set `A`, signs from `emask` (bit set ⇒
/// −1), scaled perturbation entries `g_nums/m · s`: exact common
/// denominator `m·s_den`.
fn build_scaled_h(
    n: usize,
    m: i64,
    amask: u32,
    emask: u32,
    comp_coords: &[usize],
    g_nums: &[i64],
    scale: Ratio64,
) -> CoeffVector {
    let s_num = *scale.numer();
    let s_den = *scale.denom();
    let den = m * s_den;
    let mut nums = vec![0i64; n];
    let mut apos = 0usize;
    for (i, slot) in nums.iter_mut().enumerate() {
        if amask & (1 << i) != 0 {
            let sign = if emask & (1 << apos) != 0 { -1 } else { 1 };
            *slot = sign * den;
            apos += 1;
        }
    }
    for (j, &coord) in comp_coords.iter().enumerate() {
        nums[coord] = g_nums[j] * s_num;
    }
    CoeffVector::new(nums, den).expect("positive denominator")
}

/// Scaled-Γ search: the perturbation ranges over grid vectors multiplied by
/// each factor in `scales` (so it may leave the unit cube).
pub fn estimate_qglc_v(
    basis: &Basis,
    grid: &GridSpec,
    opts: &SearchOpts,
    scales: &[Ratio64],
) -> Result<Estimate> {
    check_budget(opts)?;
    if scales.is_empty() {
        return Err(Error::InvalidParameter("scale set must be nonempty".into()));
    }
    let n = basis.dim();
    let m = grid.m();
    let size = qglc_v_size(n, m, scales.len());
    let mut sorted_scales = scales.to_vec();
    sorted_scales.sort();

    let (cand, mode) = if within_budget(size, opts.budget) {
        let cand = (1u32..(1 << n))
            .into_par_iter()
            .fold(
                || None,
                |mut acc, amask| {
                    let aset = IndexSet::from_mask(n, amask);
                    let k = aset.len();
                    let comp_coords: Vec<usize> =
                        aset.complement().indices().iter().map(|i| i - 1).collect();
                    let g_total = grid_size(comp_coords.len(), m).expect("within budget");
                    for emask in 0..(1u32 << k) {
                        for scale in &sorted_scales {
                            for gidx in 0..g_total {
                                let g_nums = decode_point(gidx, comp_coords.len(), m);
                                let h = build_scaled_h(
                                    n, m, amask, emask, &comp_coords, &g_nums, *scale,
                                );
                                let den = basis.norm_of(&h);
                                if den <= 0.0 || !den.is_finite() {
                                    continue;
                                }
                                let val = basis.norm_of_masked(&h, &aset) / den;
                                consider(&mut acc, val, || {
                                    gamma_cand(basis, &h, val, amask, Some(*scale))
                                });
                            }
                        }
                    }
                    acc
                },
            )
            .reduce(|| None, merge_opt)
            .expect("A = {1}, g = 0 is always a candidate");
        (cand, Mode::Exhaustive { m })
    } else {
        (
            sampled_qglc_v(basis, grid, opts, &sorted_scales)?,
            Mode::Sampled { m, budget: opts.budget, seed: opts.seed },
        )
    };
    let (value, witness) = cand.into_witness();
    Ok(Estimate { quantity: Quantity::QglcV, level: None, value, witness, mode })
}

fn sampled_qglc_v(
    basis: &Basis,
    grid: &GridSpec,
    opts: &SearchOpts,
    scales: &[Ratio64],
) -> Result<Cand> {
    if opts.samples == 0 {
        return Err(Error::ZeroBudget);
    }
    let n = basis.dim();
    let m = grid.m();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let eval = |amask: u32, emask: u32, comp: &[usize], g: &[i64], sc: Ratio64| -> Option<f64> {
        let h = build_scaled_h(n, m, amask, emask, comp, g, sc);
        let den = basis.norm_of(&h);
        if den <= 0.0 || !den.is_finite() {
            return None;
        }
        Some(basis.norm_of_masked(&h, &IndexSet::from_mask(n, amask)) / den)
    };

    // Baseline: A = {1}, ε = +, g = 0, first scale.
    let mut best = (1u32, 0u32, vec![0i64; n - 1], scales[0]);
    let comp_of = |amask: u32| -> Vec<usize> {
        IndexSet::from_mask(n, amask).complement().indices().iter().map(|i| i - 1).collect()
    };
    let mut best_val = eval(best.0, best.1, &comp_of(best.0), &best.2, best.3)
        .expect("indicator alone is a valid candidate");

    for _ in 0..opts.samples {
        let amask = rng.gen_range(1u32..(1 << n));
        let k = amask.count_ones();
        let emask = rng.gen_range(0u32..(1 << k));
        let comp = comp_of(amask);
        let g: Vec<i64> = comp.iter().map(|_| rng.gen_range(-m..=m)).collect();
        let scale = scales[rng.gen_range(0..scales.len())];
        if let Some(val) = eval(amask, emask, &comp, &g, scale) {
            if val > best_val {
                best_val = val;
                best = (amask, emask, g, scale);
            }
        }
    }

    // Ascent over perturbation coordinates and the scale factor.
    let comp = comp_of(best.0);
    for _ in 0..opts.sweeps {
        let mut improved = false;
        for j in 0..comp.len() {
            let orig = best.2[j];
            let mut best_here: Option<(f64, i64)> = None;
            for v in -m..=m {
                if v == orig {
                    continue;
                }
                best.2[j] = v;
                if let Some(val) = eval(best.0, best.1, &comp, &best.2, best.3) {
                    if val > best_val && best_here.is_none_or(|(bv, _)| val > bv) {
                        best_here = Some((val, v));
                    }
                }
            }
            match best_here {
                Some((val, v)) => {
                    best.2[j] = v;
                    best_val = val;
                    improved = true;
                }
                None => best.2[j] = orig,
            }
        }
        for &sc in scales {
            if sc != best.3 {
                if let Some(val) = eval(best.0, best.1, &comp, &best.2, sc) {
                    if val > best_val {
                        best_val = val;
                        best.3 = sc;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }

    let h = build_scaled_h(n, m, best.0, best.1, &comp, &best.2, best.3);
    Ok(gamma_cand(basis, &h, best_val, best.0, Some(best.3)))
}

// ---------------------------------------------------------------------------
// Nested signed indicators
// ---------------------------------------------------------------------------

fn succ_size(n: usize) -> Option<u64> {
    // Per coordinate: outside A, in A∖B with ±, or in B with ± — 5 states.
    checked_pow(5, n)
}

/// `max ‖𝟙_{ε,B}‖ / ‖𝟙_{ε,A}‖` over `∅ ≠ B ⊆ A` and signs `ε` on `A`.
/// No grid vectors are involved, so `grid` only stamps the mode.
pub fn estimate_succ(basis: &Basis, grid: &GridSpec, opts: &SearchOpts) -> Result<Estimate> {
    check_budget(opts)?;
    let n = basis.dim();
    let (cand, mode) = if within_budget(succ_size(n), opts.budget) {
        let cand = (1u32..(1 << n))
            .into_par_iter()
            .fold(
                || None,
                |mut acc, amask| {
                    let aset = IndexSet::from_mask(n, amask);
                    let k = aset.len();
                    for emask in 0..(1u32 << k) {
                        let signs = sign_pattern_on(n, &aset, emask);
                        let ind = basis.indicator(&signs, &aset);
                        let den = basis.norm_of(&ind);
                        if den <= 0.0 || !den.is_finite() {
                            continue;
                        }
                        let mut b = amask;
                        loop {
                            let bset = IndexSet::from_mask(n, b);
                            let val = basis.norm_of_masked(&ind, &bset) / den;
                            consider(&mut acc, val, || Cand {
                                value: val,
                                coeffs: ind.project(&bset),
                                set: aset,
                                signs: signs.on_set(&aset),
                                scale: None,
                                at_level: None,
                            });
                            b = (b - 1) & amask;
                            if b == 0 {
                                break;
                            }
                        }
                    }
                    acc
                },
            )
            .reduce(|| None, merge_opt)
            .expect("B = A = {1} is always a candidate");
        (cand, Mode::Exhaustive { m: grid.m() })
    } else {
        (
            sampled_succ(basis, opts)?,
            Mode::Sampled { m: grid.m(), budget: opts.budget, seed: opts.seed },
        )
    };
    let (value, witness) = cand.into_witness();
    Ok(Estimate { quantity: Quantity::Succ, level: None, value, witness, mode })
}

/// Expands a sign choice for the members of `set` (bit `j` of `emask` ⇒
/// the `j`-th smallest member gets −1) into a full pattern.
fn sign_pattern_on(n: usize, set: &IndexSet, emask: u32) -> SignPattern {
    let mut v = vec![1i8; n];
    for (pos, idx) in set.indices().iter().enumerate() {
        if emask & (1 << pos) != 0 {
            v[idx - 1] = -1;
        }
    }
    SignPattern::new(v).expect("signs are ±1")
}

fn sampled_succ(basis: &Basis, opts: &SearchOpts) -> Result<Cand> {
    if opts.samples == 0 {
        return Err(Error::ZeroBudget);
    }
    let n = basis.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let eval = |amask: u32, emask: u32, bmask: u32| -> Option<f64> {
        let aset = IndexSet::from_mask(n, amask);
        let signs = sign_pattern_on(n, &aset, emask);
        let ind = basis.indicator(&signs, &aset);
        let den = basis.norm_of(&ind);
        if den <= 0.0 || !den.is_finite() {
            return None;
        }
        Some(basis.norm_of_masked(&ind, &IndexSet::from_mask(n, bmask)) / den)
    };

    let mut best = (1u32, 0u32, 1u32);
    let mut best_val = eval(best.0, best.1, best.2).expect("B = A = {1} is a candidate");

    for _ in 0..opts.samples {
        let amask = rng.gen_range(1u32..(1 << n));
        let k = amask.count_ones();
        let emask = rng.gen_range(0u32..(1 << k));
        // Random nonempty subset of A.
        let mut bmask = amask & rng.gen_range(0u32..(1 << n));
        if bmask == 0 {
            bmask = amask & amask.wrapping_neg();
        }
        if let Some(val) = eval(amask, emask, bmask) {
            if val > best_val {
                best_val = val;
                best = (amask, emask, bmask);
            }
        }
    }

    // Local search: toggle each coordinate through its five states.
    for _ in 0..opts.sweeps {
        let mut improved = false;
        for coord in 0..n {
            let bit = 1u32 << coord;
            let mut cand_states: Vec<(u32, u32, u32)> = Vec::with_capacity(5);
            // Current sign positions depend on masks, so rebuild variants.
            for state in 0..5u32 {
                // 0: out; 1: A∖B, +; 2: A∖B, −; 3: B, +; 4: B, −.
                let mut am = best.0 & !bit;
                let mut bm = best.2 & !bit & am;
                let in_a = state >= 1;
                let in_b = state >= 3;
                if in_a {
                    am |= bit;
                }
                if in_b {
                    bm |= bit;
                }
                if am == 0 || bm == 0 {
                    continue;
                }
                // Recompute the sign mask against the new A, preserving the
                // signs of unchanged members and imposing the state's sign.
                let aset_new = IndexSet::from_mask(n, am);
                let aset_old = IndexSet::from_mask(n, best.0);
                let old_signs = sign_pattern_on(n, &aset_old, best.1);
                let mut em = 0u32;
                for (pos, idx) in aset_new.indices().iter().enumerate() {
                    let neg = if *idx - 1 == coord {
                        state == 2 || state == 4
                    } else {
                        old_signs.get(*idx) == -1
                    };
                    if neg {
                        em |= 1 << pos;
                    }
                }
                cand_states.push((am, em, bm));
            }
            for (am, em, bm) in cand_states {
                if (am, em, bm) == best {
                    continue;
                }
                if let Some(val) = eval(am, em, bm) {
                    if val > best_val {
                        best_val = val;
                        best = (am, em, bm);
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }

    let aset = IndexSet::from_mask(n, best.0);
    let signs = sign_pattern_on(n, &aset, best.1);
    let ind = basis.indicator(&signs, &aset);
    Ok(Cand {
        value: best_val,
        coeffs: ind.project(&IndexSet::from_mask(n, best.2)),
        set: aset,
        signs: signs.on_set(&aset),
        scale: None,
        at_level: None,
    })
}

// ---------------------------------------------------------------------------
// Dispatch and witness re-evaluation
// ---------------------------------------------------------------------------

/// Runs the estimator selected by `quantity`. Leveled quantities require
/// `level`; level-free ones reject it.
pub fn estimate(
    basis: &Basis,
    quantity: Quantity,
    level: Option<&Level>,
    grid: &GridSpec,
    opts: &SearchOpts,
) -> Result<Estimate> {
    if quantity.is_leveled() {
        let a = level.ok_or_else(|| {
            Error::InvalidParameter(format!("quantity {} requires a level", quantity.token()))
        })?;
        return match quantity {
            Quantity::Phi => estimate_phi(basis, a, grid, opts),
            Quantity::Theta => estimate_theta(basis, a, grid, opts),
            Quantity::Lambda => estimate_lambda(basis, a, grid, opts),
            Quantity::Rho => estimate_rho(basis, a, grid, opts),
            _ => unreachable!(),
        };
    }
    if level.is_some() {
        return Err(Error::InvalidParameter(format!(
            "quantity {} takes no level",
            quantity.token()
        )));
    }
    match quantity {
        Quantity::Gamma => estimate_gamma(basis, grid, opts),
        Quantity::LambdaSup => estimate_lambda_sup(basis, grid, opts),
        Quantity::Succ => estimate_succ(basis, grid, opts),
        Quantity::QglcV => estimate_qglc_v(basis, grid, opts, &default_scales()),
        Quantity::OneSign => estimate_one_sign_k(basis, grid, opts),
        _ => unreachable!(),
    }
}

/// Recomputes an estimate's value from its witness alone.
///
/// The arithmetic retraces the search's evaluation exactly, so the result
/// matches `estimate.value` to the last bit for exhaustively found witnesses
/// and within 1e-12 always.
pub fn reevaluate_witness(basis: &Basis, e: &Estimate) -> Result<f64> {
    let w = &e.witness;
    let n = basis.dim();
    match e.quantity {
        Quantity::Phi | Quantity::Theta => {
            let den = basis.norm_of(&w.coeffs);
            Ok(basis.norm_of_masked(&w.coeffs, &w.set) / den)
        }
        Quantity::Lambda | Quantity::LambdaSup => {
            if w.set.is_empty() {
                return Err(Error::EmptySet("witness set is empty"));
            }
            let den = basis.norm_of(&w.coeffs);
            let min_num = w
                .set
                .indices()
                .iter()
                .map(|&i| w.coeffs.nums()[i - 1].abs())
                .min()
                .expect("nonempty set");
            let ind = basis.indicator(&w.full_signs(n), &w.set);
            Ok((min_num as f64 / w.coeffs.den() as f64) * basis.norm_of(&ind) / den)
        }
        Quantity::Rho => {
            let a = e.level.ok_or_else(|| {
                Error::InvalidParameter("ρ estimate is missing its level".into())
            })?;
            let den = basis.norm_of(&w.coeffs);
            let ind = basis.indicator(&w.full_signs(n), &w.set);
            Ok(a.as_f64() * basis.norm_of(&ind) / den)
        }
        Quantity::Gamma | Quantity::OneSign | Quantity::QglcV => {
            // Rebuild the combined vector: ±den on A, perturbation off A.
            let den_i = w.coeffs.den();
            let mut nums = w.coeffs.nums().to_vec();
            for (pos, idx) in w.set.indices().iter().enumerate() {
                nums[idx - 1] = i64::from(w.signs[pos]) * den_i;
            }
            let h = CoeffVector::new(nums, den_i)?;
            let den = basis.norm_of(&h);
            Ok(basis.norm_of_masked(&h, &w.set) / den)
        }
        Quantity::Succ => {
            let ind = basis.indicator(&w.full_signs(n), &w.set);
            let den = basis.norm_of(&ind);
            Ok(basis.norm_of(&w.coeffs) / den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{NormDescriptor, QuasiNormedSpace};

    fn l1(dim: usize) -> Basis {
        Basis::canonical(
            QuasiNormedSpace::new(dim, 1.0, NormDescriptor::Lp { q: 1.0 }).unwrap(),
        )
        .unwrap()
    }

    fn lhalf(dim: usize) -> Basis {
        Basis::canonical(
            QuasiNormedSpace::new(dim, 0.5, NormDescriptor::Lp { q: 0.5 }).unwrap(),
        )
        .unwrap()
    }

    fn opts() -> SearchOpts {
        SearchOpts::default()
    }

    #[test]
    fn unconditional_bases_stay_at_one() {
        let grid = GridSpec::new(2).unwrap();
        let half = Level::new(1, 2).unwrap();
        let one = Level::one();
        for basis in [l1(3), lhalf(3)] {
            for a in [&half, &one] {
                let e = estimate_phi(&basis, a, &grid, &opts()).unwrap();
                assert_eq!(e.value, 1.0);
                assert!(e.mode.is_exhaustive());
            }
            assert_eq!(estimate_gamma(&basis, &grid, &opts()).unwrap().value, 1.0);
            assert_eq!(estimate_succ(&basis, &grid, &opts()).unwrap().value, 1.0);
            assert_eq!(
                estimate_qglc_v(&basis, &grid, &opts(), &default_scales()).unwrap().value,
                1.0
            );
        }
    }

    #[test]
    fn summing_level_one_values_at_unit_grid() {
        let basis = Basis::summing(3).unwrap();
        let grid = GridSpec::new(1).unwrap();
        let one = Level::one();
        let phi = estimate_phi(&basis, &one, &grid, &opts()).unwrap();
        let theta = estimate_theta(&basis, &one, &grid, &opts()).unwrap();
        let lambda = estimate_lambda(&basis, &one, &grid, &opts()).unwrap();
        let rho = estimate_rho(&basis, &one, &grid, &opts()).unwrap();
        assert_eq!(phi.value, 2.0);
        assert_eq!(theta.value, 1.0);
        // At level 1 the three truncation-style quantities coincide exactly.
        assert_eq!(theta.value.to_bits(), lambda.value.to_bits());
        assert_eq!(theta.value.to_bits(), rho.value.to_bits());
        // The reported φ witness is the smallest maximizer.
        assert_eq!(phi.witness.coeffs.nums(), &[-1, -1, 1]);
        assert_eq!(phi.witness.set.indices(), vec![1, 2]);
        assert_eq!(phi.witness.signs, vec![-1, -1]);
        let re = reevaluate_witness(&basis, &phi).unwrap();
        assert_eq!(re, phi.value);
    }

    #[test]
    fn gamma_matches_phi_at_level_one_bitwise() {
        for basis in [Basis::summing(3).unwrap(), Basis::difference(3).unwrap()] {
            for m in [1, 2] {
                let grid = GridSpec::new(m).unwrap();
                let phi = estimate_phi(&basis, &Level::one(), &grid, &opts()).unwrap();
                let gamma = estimate_gamma(&basis, &grid, &opts()).unwrap();
                assert_eq!(phi.value.to_bits(), gamma.value.to_bits());
            }
        }
    }

    #[test]
    fn gamma_witness_on_summing_three() {
        let basis = Basis::summing(3).unwrap();
        let grid = GridSpec::new(1).unwrap();
        let gamma = estimate_gamma(&basis, &grid, &opts()).unwrap();
        assert_eq!(gamma.value, 2.0);
        // Witness: perturbation −x_2 against A = {1,3}, ε = (+,+):
        // ‖s_1+s_3‖ = 2 while ‖s_1−s_2+s_3‖ = 1.
        assert_eq!(gamma.witness.coeffs.nums(), &[0, -1, 0]);
        assert_eq!(gamma.witness.set.indices(), vec![1, 3]);
        assert_eq!(gamma.witness.signs, vec![1, 1]);
        assert_eq!(reevaluate_witness(&basis, &gamma).unwrap(), 2.0);
    }

    #[test]
    fn theta_never_exceeds_phi() {
        let basis = Basis::summing(3).unwrap();
        let grid = GridSpec::new(2).unwrap();
        for level in grid.levels() {
            let phi = estimate_phi(&basis, &level, &grid, &opts()).unwrap();
            let theta = estimate_theta(&basis, &level, &grid, &opts()).unwrap();
            assert!(theta.value <= phi.value);
        }
    }

    #[test]
    fn rho_never_exceeds_lambda_and_sups_agree() {
        let basis = Basis::summing(3).unwrap();
        let grid = GridSpec::new(2).unwrap();
        let mut rho_sup = 0.0f64;
        for level in grid.levels() {
            let lambda = estimate_lambda(&basis, &level, &grid, &opts()).unwrap();
            let rho = estimate_rho(&basis, &level, &grid, &opts()).unwrap();
            assert!(rho.value <= lambda.value);
            rho_sup = rho_sup.max(rho.value);
        }
        let sup = estimate_lambda_sup(&basis, &grid, &opts()).unwrap();
        assert_eq!(sup.value.to_bits(), rho_sup.to_bits());
        assert!(sup.witness.at_level.is_some());
        // λ̂(1) at m = 2 sees the conditionality: f = −x₁ + ½x₃ has
        // A(1, f) = {1}, ‖𝟙‖ = 1, ‖f‖ = ½.
        let lam1 = estimate_lambda(&basis, &Level::one(), &grid, &opts()).unwrap();
        assert_eq!(lam1.value, 2.0);
        assert_eq!(lam1.witness.coeffs.nums(), &[-2, 0, 1]);
    }

    #[test]
    fn qglc_v_dominates_gamma() {
        let basis = Basis::summing(3).unwrap();
        let grid = GridSpec::new(1).unwrap();
        let gamma = estimate_gamma(&basis, &grid, &opts()).unwrap();
        let v = estimate_qglc_v(&basis, &grid, &opts(), &default_scales()).unwrap();
        assert!(v.value >= gamma.value);
        assert_eq!(reevaluate_witness(&basis, &v).unwrap(), v.value);
    }

    #[test]
    fn succ_never_exceeds_gamma() {
        for dim in [3, 4] {
            let basis = Basis::summing(dim).unwrap();
            let grid = GridSpec::new(1).unwrap();
            let succ = estimate_succ(&basis, &grid, &opts()).unwrap();
            let gamma = estimate_gamma(&basis, &grid, &opts()).unwrap();
            assert!(succ.value <= gamma.value);
            assert_eq!(reevaluate_witness(&basis, &succ).unwrap(), succ.value);
        }
    }

    #[test]
    fn one_sign_restriction_is_dominated() {
        let basis = Basis::summing(3).unwrap();
        let grid = GridSpec::new(2).unwrap();
        let k = estimate_one_sign_k(&basis, &grid, &opts()).unwrap();
        let gamma = estimate_gamma(&basis, &grid, &opts()).unwrap();
        assert!(k.value <= gamma.value);
        assert!(k.witness.signs.iter().all(|&s| s == 1));
        assert_eq!(reevaluate_witness(&basis, &k).unwrap(), k.value);
    }

    #[test]
    fn determinism_across_runs() {
        let basis = Basis::summing(3).unwrap();
        let grid = GridSpec::new(2).unwrap();
        let a = Level::new(1, 2).unwrap();
        let e1 = estimate_phi(&basis, &a, &grid, &opts()).unwrap();
        let e2 = estimate_phi(&basis, &a, &grid, &opts()).unwrap();
        assert_eq!(e1, e2);
    }

    #[test]
    fn sampled_mode_is_deterministic_and_sound() {
        // Force sampling with a tiny budget on a large unconditional space.
        let basis = l1(8);
        let grid = GridSpec::new(2).unwrap();
        let a = Level::new(1, 2).unwrap();
        let opts = SearchOpts { budget: 100, samples: 200, sweeps: 5, seed: 42 };
        let e1 = estimate_phi(&basis, &a, &grid, &opts).unwrap();
        let e2 = estimate_phi(&basis, &a, &grid, &opts).unwrap();
        assert_eq!(e1, e2);
        assert!(!e1.mode.is_exhaustive());
        // ℓ1 projections are contractive, so sampling must sit at exactly 1.
        assert_eq!(e1.value, 1.0);
        let re = reevaluate_witness(&basis, &e1).unwrap();
        assert!((re - e1.value).abs() <= 1e-12);
    }

    #[test]
    fn error_paths() {
        let basis = l1(2);
        let grid = GridSpec::new(2).unwrap();
        let off = Level::new(1, 3).unwrap();
        assert!(matches!(
            estimate_phi(&basis, &off, &grid, &opts()),
            Err(Error::OffGridLevel { .. })
        ));
        let zero = SearchOpts { budget: 0, ..SearchOpts::default() };
        assert!(matches!(
            estimate_phi(&basis, &Level::one(), &grid, &zero),
            Err(Error::ZeroBudget)
        ));
        assert!(matches!(
            estimate(&basis, Quantity::Gamma, Some(&Level::one()), &grid, &opts()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            estimate(&basis, Quantity::Phi, None, &grid, &opts()),
            Err(Error::InvalidParameter(_))
        ));
    }
}

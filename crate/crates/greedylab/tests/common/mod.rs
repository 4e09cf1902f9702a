//! A deliberately independent brute-force oracle.
//!
//! Nothing here reuses the library's norm kernels, dual matrices, or
//! enumeration order: ambient vectors come from the defining formulas of
//! each model basis, subsets are walked over index lists rather than
//! submask tricks, and coefficients are enumerated by a recursive
//! odometer. Agreement between this module and the crate is therefore
//! evidence, not tautology.

/// One model basis, described by closures instead of matrices.
pub struct OracleBasis {
    pub dim: usize,
    /// Coefficients -> ambient vector, straight from the defining formula.
    pub ambient: fn(&[f64]) -> Vec<f64>,
    /// Ambient norm.
    pub norm: fn(&[f64]) -> f64,
}

pub fn l1_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

pub fn sup_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

pub fn lhalf_quasinorm(v: &[f64]) -> f64 {
    let s: f64 = v.iter().map(|x| x.abs().sqrt()).sum();
    s * s
}

fn identity_ambient(c: &[f64]) -> Vec<f64> {
    c.to_vec()
}

/// Summing basis s_n = e_1 + … + e_n: ambient coordinate k is the tail
/// sum c_k + … + c_N.
fn summing_ambient(c: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; c.len()];
    let mut tail = 0.0;
    for k in (0..c.len()).rev() {
        tail += c[k];
        out[k] = tail;
    }
    out
}

/// Difference basis x_1 = e_1, x_n = e_n − e_{n−1}: ambient coordinate k
/// is c_k − c_{k+1}.
fn difference_ambient(c: &[f64]) -> Vec<f64> {
    let n = c.len();
    (0..n)
        .map(|k| if k + 1 < n { c[k] - c[k + 1] } else { c[k] })
        .collect()
}

pub fn oracle_l1(dim: usize) -> OracleBasis {
    OracleBasis { dim, ambient: identity_ambient, norm: l1_norm }
}

pub fn oracle_lhalf(dim: usize) -> OracleBasis {
    OracleBasis { dim, ambient: identity_ambient, norm: lhalf_quasinorm }
}

pub fn oracle_summing(dim: usize) -> OracleBasis {
    OracleBasis { dim, ambient: summing_ambient, norm: sup_norm }
}

pub fn oracle_difference(dim: usize) -> OracleBasis {
    OracleBasis { dim, ambient: difference_ambient, norm: l1_norm }
}

fn norm_of(b: &OracleBasis, coeffs: &[f64]) -> f64 {
    (b.norm)(&(b.ambient)(coeffs))
}

/// Visits every coefficient vector with integer numerators in [−m, m].
fn for_each_point(dim: usize, m: i64, f: &mut impl FnMut(&[i64])) {
    let mut nums = vec![-m; dim];
    loop {
        f(&nums);
        let mut i = 0;
        loop {
            if i == dim {
                return;
            }
            if nums[i] < m {
                nums[i] += 1;
                break;
            }
            nums[i] = -m;
            i += 1;
        }
    }
}

/// Indices (0-based) with |numerator| ≥ a_num, i.e. |c_n| ≥ a_num/m.
fn super_threshold(nums: &[i64], a_num: i64) -> Vec<usize> {
    nums.iter()
        .enumerate()
        .filter(|(_, &k)| k.abs() >= a_num)
        .map(|(i, _)| i)
        .collect()
}

fn restrict(nums: &[i64], keep: &[usize], bits: u32, m: i64) -> Vec<f64> {
    let mut out = vec![0.0; nums.len()];
    for (pos, &idx) in keep.iter().enumerate() {
        if bits & (1 << pos) != 0 {
            out[idx] = nums[idx] as f64 / m as f64;
        }
    }
    out
}

fn to_f64(nums: &[i64], m: i64) -> Vec<f64> {
    nums.iter().map(|&k| k as f64 / m as f64).collect()
}

/// Largest ratio ‖S_B f‖/‖f‖ over grid points f and nonempty B ⊆ A(a, f).
pub fn oracle_phi(b: &OracleBasis, a_num: i64, m: i64) -> f64 {
    let mut best = 0.0f64;
    for_each_point(b.dim, m, &mut |nums| {
        let a = super_threshold(nums, a_num);
        if a.is_empty() {
            return;
        }
        let denom = norm_of(b, &to_f64(nums, m));
        for bits in 1u32..(1 << a.len()) {
            let proj = restrict(nums, &a, bits, m);
            best = best.max(norm_of(b, &proj) / denom);
        }
    });
    best
}

/// Same with B = A(a, f) only.
pub fn oracle_theta(b: &OracleBasis, a_num: i64, m: i64) -> f64 {
    let mut best = 0.0f64;
    for_each_point(b.dim, m, &mut |nums| {
        let a = super_threshold(nums, a_num);
        if a.is_empty() {
            return;
        }
        let denom = norm_of(b, &to_f64(nums, m));
        let full = (1u32 << a.len()) - 1;
        let proj = restrict(nums, &a, full, m);
        best = best.max(norm_of(b, &proj) / denom);
    });
    best
}

fn signed_indicator(b: &OracleBasis, nums: &[i64], a: &[usize]) -> Vec<f64> {
    let mut out = vec![0.0; b.dim];
    for &idx in a {
        out[idx] = if nums[idx] < 0 { -1.0 } else { 1.0 };
    }
    out
}

/// min_{A}|c_n| · ‖𝟙_{ε,A}‖ / ‖f‖ over grid points, A = A(a, f).
pub fn oracle_lambda(b: &OracleBasis, a_num: i64, m: i64) -> f64 {
    let mut best = 0.0f64;
    for_each_point(b.dim, m, &mut |nums| {
        let a = super_threshold(nums, a_num);
        if a.is_empty() {
            return;
        }
        let min_abs = a.iter().map(|&i| nums[i].abs()).min().unwrap() as f64 / m as f64;
        let ind = signed_indicator(b, nums, &a);
        let denom = norm_of(b, &to_f64(nums, m));
        best = best.max(min_abs * norm_of(b, &ind) / denom);
    });
    best
}

/// a · ‖𝟙_{ε,A}‖ / ‖f‖ over grid points, A = A(a, f).
pub fn oracle_rho(b: &OracleBasis, a_num: i64, m: i64) -> f64 {
    let mut best = 0.0f64;
    let a_val = a_num as f64 / m as f64;
    for_each_point(b.dim, m, &mut |nums| {
        let a = super_threshold(nums, a_num);
        if a.is_empty() {
            return;
        }
        let ind = signed_indicator(b, nums, &a);
        let denom = norm_of(b, &to_f64(nums, m));
        best = best.max(a_val * norm_of(b, &ind) / denom);
    });
    best
}

fn for_each_off_part(
    dim: usize,
    in_a: &[bool],
    m: i64,
    f: &mut impl FnMut(&[i64]),
) {
    let free: Vec<usize> = (0..dim).filter(|&i| !in_a[i]).collect();
    let mut g = vec![0i64; dim];
    fn rec(free: &[usize], pos: usize, m: i64, g: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
        if pos == free.len() {
            f(g);
            return;
        }
        for v in -m..=m {
            g[free[pos]] = v;
            rec(free, pos + 1, m, g, f);
        }
    }
    rec(&free, 0, m, &mut g, f);
}

/// sup ‖𝟙_{ε,A}‖ / ‖𝟙_{ε,A} + g‖ over nonempty A, signs ε, and grid
/// vectors g supported off A.
pub fn oracle_gamma(b: &OracleBasis, m: i64) -> f64 {
    let mut best = 0.0f64;
    for amask in 1u32..(1 << b.dim) {
        let idx: Vec<usize> = (0..b.dim).filter(|&i| amask & (1 << i) != 0).collect();
        let in_a: Vec<bool> = (0..b.dim).map(|i| amask & (1 << i) != 0).collect();
        for emask in 0u32..(1 << idx.len()) {
            let mut ind = vec![0.0; b.dim];
            for (pos, &i) in idx.iter().enumerate() {
                ind[i] = if emask & (1 << pos) != 0 { -1.0 } else { 1.0 };
            }
            let num = norm_of(b, &ind);
            for_each_off_part(b.dim, &in_a, m, &mut |g| {
                let mut h = ind.clone();
                for i in 0..b.dim {
                    if !in_a[i] {
                        h[i] = g[i] as f64 / m as f64;
                    }
                }
                best = best.max(num / norm_of(b, &h));
            });
        }
    }
    best
}

/// sup ‖𝟙_{ε,B}‖ / ‖𝟙_{ε,A}‖ over nonempty B ⊆ A and signs ε on A.
pub fn oracle_succ(b: &OracleBasis) -> f64 {
    let mut best = 0.0f64;
    for amask in 1u32..(1 << b.dim) {
        let idx: Vec<usize> = (0..b.dim).filter(|&i| amask & (1 << i) != 0).collect();
        for emask in 0u32..(1 << idx.len()) {
            let mut ind = vec![0.0; b.dim];
            for (pos, &i) in idx.iter().enumerate() {
                ind[i] = if emask & (1 << pos) != 0 { -1.0 } else { 1.0 };
            }
            let denom = norm_of(b, &ind);
            for bits in 1u32..(1 << idx.len()) {
                let mut part = vec![0.0; b.dim];
                for (pos, &i) in idx.iter().enumerate() {
                    if bits & (1 << pos) != 0 {
                        part[i] = ind[i];
                    }
                }
                best = best.max(norm_of(b, &part) / denom);
            }
        }
    }
    best
}

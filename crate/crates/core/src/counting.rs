//! Exact path counts, significance levels and the closed-form counts of
//! natural levels and dominance refinements.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::diophantine;
use crate::lattice::{self, LatticePath};
use crate::{BigCount, Error, ExactRational, Result};

/// `C(a, b)`, or 0 unless `a >= b >= 0`.
pub fn binomial(a: i64, b: i64) -> BigCount {
    if b < 0 || a < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for k in 0..b {
        acc *= a - k;
        acc /= k + 1;
    }
    acc
}

pub fn factorial(k: u64) -> BigCount {
    (1..=k).fold(BigUint::one(), |acc, j| acc * j)
}

/// Number of paths `q` with `q_i <= p_i` for all `i`.
pub fn count_dominated(p: &LatticePath) -> BigCount {
    let t = p.tuple();
    // ways[v]: prefixes q_1..q_i with q_i = v
    let mut ways: Vec<BigUint> = vec![BigUint::one(); t[0] + 1];
    for &cap in &t[1..] {
        let mut next = Vec::with_capacity(cap + 1);
        let mut run = BigUint::zero();
        for v in 0..=cap {
            if let Some(w) = ways.get(v) {
                run += w;
            }
            next.push(run.clone());
        }
        ways = next;
    }
    ways.iter().sum()
}

/// Number of paths `q` with `q_i >= p_i` for all `i`.
pub fn count_dominating(p: &LatticePath) -> BigCount {
    let m = p.m();
    let t = p.tuple();
    // ways[v]: prefixes with q_i = v, zero below the floor t_i
    let mut ways: Vec<BigUint> = (0..=m)
        .map(|v| {
            if v >= t[0] {
                BigUint::one()
            } else {
                BigUint::zero()
            }
        })
        .collect();
    for &floor in &t[1..] {
        let mut run = BigUint::zero();
        for (v, slot) in ways.iter_mut().enumerate() {
            run += &*slot;
            *slot = if v >= floor {
                run.clone()
            } else {
                BigUint::zero()
            };
        }
    }
    ways.iter().sum()
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// The Kreweras matrix `(C(t_{n-j+1} + 1, 1 + j - i))` for `i, j = 1..n`.
pub fn kreweras_matrix(p: &LatticePath) -> Vec<Vec<BigInt>> {
    let n = p.n();
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let top = p.entry(n - j + 1) as i64 + 1;
                    BigInt::from_biguint(Sign::Plus, binomial(top, 1 + j as i64 - i as i64))
                })
                .collect()
        })
        .collect()
}

/// Paths dominated by `p`, as the Kreweras determinant.
pub fn kreweras_count(p: &LatticePath) -> BigCount {
    let det = bareiss_determinant(kreweras_matrix(p));
    assert!(
        !det.is_negative(),
        "path count determinant is negative: {det}"
    );
    det.magnitude().clone()
}

/// Ordered Bell numbers `B_0..=B_k` from `B_k = sum_{j=1..k} C(k,j) B_{k-j}`.
pub fn ordered_bell_table(k: usize) -> Vec<BigCount> {
    let mut table: Vec<BigCount> = Vec::with_capacity(k + 1);
    table.push(BigUint::one());
    for size in 1..=k {
        let value = (1..=size)
            .map(|j| binomial(size as i64, j as i64) * &table[size - j])
            .sum();
        table.push(value);
    }
    table
}

/// The number of ordered partitions of a `k`-set.
pub fn ordered_bell(k: i64) -> Result<BigCount> {
    if k < 0 {
        return Err(Error::NegativeArgument(k));
    }
    Ok(ordered_bell_table(k as usize)
        .pop()
        .expect("table is nonempty"))
}

fn check_grid(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::EmptySample { m, n });
    }
    Ok(())
}

fn exact_div(num: u128, den: u128) -> u128 {
    debug_assert_eq!(num % den, 0, "{num} not divisible by {den}");
    num / den
}

/// Number of natural levels: `(d^2 + nm(2d - 1) + d(n + m)) / (2d^2)`.
pub fn natural_level_count(m: usize, n: usize) -> Result<BigCount> {
    check_grid(m, n)?;
    let (m, n) = (m as u128, n as u128);
    let d = m.gcd(&n);
    let num = d * d + n * m * (2 * d - 1) + d * (n + m);
    Ok(exact_div(num, 2 * d * d).into())
}

/// Number of levels of any saturated dominance refinement:
/// `((n + 1)(m + 1) - (d + 1)) / 2 + 1`.
pub fn saturated_level_count(m: usize, n: usize) -> Result<BigCount> {
    check_grid(m, n)?;
    let (m, n) = (m as u128, n as u128);
    let d = m.gcd(&n);
    Ok((exact_div((n + 1) * (m + 1) - (d + 1), 2) + 1).into())
}

/// Exponents `(e_d, e_mid)`: lines with `d` points and lines with `k` points for `0 < k < d`.
fn refinement_exponents(m: usize, n: usize) -> (u128, u128, u64) {
    let (m, n) = (m as u128, n as u128);
    let d = m.gcd(&n);
    let full = exact_div(n * m + (n + m) * d - d * d, 2 * d * d);
    let mid = exact_div(n * m, d * d);
    (full, mid, d as u64)
}

fn big_pow(base: &BigUint, exp: u128) -> BigUint {
    base.pow(u32::try_from(exp).expect("exponent fits in u32"))
}

/// Number of dominance refinements (the trivial one included):
/// `B_d^{e_d} * prod_{k=1}^{d-1} B_k^{nm/d^2}`.
pub fn refinement_count(m: usize, n: usize) -> Result<BigCount> {
    check_grid(m, n)?;
    let (full, mid, d) = refinement_exponents(m, n);
    let bell = ordered_bell_table(d as usize);
    let mut acc = big_pow(&bell[d as usize], full);
    for b in &bell[1..d as usize] {
        acc *= big_pow(b, mid);
    }
    Ok(acc)
}

/// Number of saturated dominance refinements:
/// `d!^{e_d} * prod_{k=1}^{d-1} k!^{nm/d^2}`.
pub fn saturated_refinement_count(m: usize, n: usize) -> Result<BigCount> {
    check_grid(m, n)?;
    let (full, mid, d) = refinement_exponents(m, n);
    let mut acc = big_pow(&factorial(d), full);
    for k in 1..d {
        acc *= big_pow(&factorial(k), mid);
    }
    Ok(acc)
}

/// Total number of paths on the `(m,n)` grid, `C(m+n, n)`.
pub fn path_total(m: usize, n: usize) -> BigCount {
    binomial((m + n) as i64, n as i64)
}

/// Probability of the down-set of `p` under the uniform distribution on paths.
pub fn dominance_level(p: &LatticePath) -> ExactRational {
    ExactRational::ratio(count_dominated(p), &path_total(p.m(), p.n()))
}

/// `P(mn D+ >= r)` under the null hypothesis.
pub fn tail_probability(m: usize, n: usize, r: i64) -> Result<ExactRational> {
    check_grid(m, n)?;
    let nm = (m * n) as i64;
    if !(0..=nm).contains(&r) {
        return Err(Error::Range {
            name: "r",
            value: r,
            low: 0,
            high: nm,
        });
    }
    if r == 0 {
        return Ok(ExactRational::one());
    }
    let total = path_total(m, n);
    let below = count_dominating(&lattice::profile(m, n, r - 1)?);
    Ok(ExactRational::ratio(total.clone() - below, &total))
}

/// A natural significance level attached to one profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelEntry {
    pub r: i64,
    pub profile: LatticePath,
    /// Number of paths the profile dominates.
    pub down_set: BigCount,
    pub level: ExactRational,
}

/// The down-set levels of all distinct profiles, in increasing level order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelTable {
    pub m: usize,
    pub n: usize,
    pub total: BigCount,
    pub entries: Vec<LevelEntry>,
}

pub fn level_table(m: usize, n: usize) -> Result<LevelTable> {
    let family = lattice::distinct_profiles(m, n)?;
    let total = path_total(m, n);
    let entries = family
        .entries
        .into_iter()
        .rev()
        .map(|e| {
            let down_set = count_dominated(&e.path);
            let level = ExactRational::ratio(down_set.clone(), &total);
            LevelEntry {
                r: e.r,
                profile: e.path,
                down_set,
                level,
            }
        })
        .collect();
    Ok(LevelTable {
        m,
        n,
        total,
        entries,
    })
}

/// `(r, P(mn D+ >= r))` for every attainable `r`, increasing in `r`.
pub fn tail_table(m: usize, n: usize) -> Result<Vec<(i64, ExactRational)>> {
    lattice::distinct_profiles(m, n)?
        .entries
        .iter()
        .map(|e| Ok((e.r, tail_probability(m, n, e.r)?)))
        .collect()
}

/// `1 + #{r in (0, nm] : alpha_r > 0}` by direct summation.
pub fn natural_level_count_by_sum(m: usize, n: usize) -> Result<u64> {
    check_grid(m, n)?;
    let d = m.gcd(&n);
    let mut count = 1;
    for r in (d..=m * n).step_by(d) {
        if diophantine::alpha(m, n, r as i64)? > 0 {
            count += 1;
        }
    }
    Ok(count)
}

/// `1 + sum_{r in (0, nm]} alpha_r` by direct summation.
pub fn saturated_level_count_by_sum(m: usize, n: usize) -> Result<u64> {
    check_grid(m, n)?;
    let d = m.gcd(&n);
    let mut count = 1;
    for r in (d..=m * n).step_by(d) {
        count += diophantine::alpha(m, n, r as i64)? as u64;
    }
    Ok(count)
}

/// `prod_r B_{alpha_r}` and `prod_r alpha_r!` over attainable `r > 0`.
pub fn refinement_counts_by_product(m: usize, n: usize) -> Result<(BigCount, BigCount)> {
    check_grid(m, n)?;
    let d = m.gcd(&n);
    let bell = ordered_bell_table(d + 1);
    let mut all = BigUint::one();
    let mut saturated = BigUint::one();
    for r in (d..=m * n).step_by(d) {
        let k = diophantine::alpha(m, n, r as i64)?;
        if k > 0 {
            all *= &bell[k];
            saturated *= factorial(k as u64);
        }
    }
    Ok((all, saturated))
}

//! Brute-force reference computations over every path of a small grid.
//!
//! Nothing here calls the closed forms or the dynamic programs it is used to
//! check: paths come from step sequences, statistics from walking vertices,
//! dominance from a local comparison and profiles from sublevel sets.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::lattice::{LatticePath, Step, StepSequence};
use crate::{BigCount, Error, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Every path of the `(m,n)` grid, with its step sequence.
#[derive(Debug, Clone)]
pub struct PathUniverse {
    pub m: usize,
    pub n: usize,
    pub paths: Vec<LatticePath>,
    pub steps: Vec<StepSequence>,
}

/// `C(m+n, n)` from Pascal's triangle.
fn universe_size(m: usize, n: usize) -> BigUint {
    let mut row = vec![BigUint::one(); n + 1];
    for _ in 0..m {
        for j in 1..=n {
            let left = row[j - 1].clone();
            row[j] += left;
        }
    }
    row[n].clone()
}

fn weakly_above(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x >= y)
}

fn walk_upper(steps: &StepSequence) -> i64 {
    let (m, n) = (steps.m() as i64, steps.n() as i64);
    let (mut x, mut y, mut best) = (0i64, 0i64, 0i64);
    for s in steps.steps() {
        match s {
            Step::East => x += 1,
            Step::North => y += 1,
        }
        best = best.max(n * x - m * y);
    }
    best
}

pub fn enumerate_all_paths(m: usize, n: usize, budget: u64) -> Result<PathUniverse> {
    if m == 0 || n == 0 {
        return Err(Error::EmptySample { m, n });
    }
    let size = universe_size(m, n);
    if size > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: size.to_string(),
            budget,
        });
    }
    let cap = size.to_usize().unwrap_or(0);
    let mut steps = Vec::with_capacity(cap);
    let mut current = Vec::with_capacity(m + n);
    fn rec(east: usize, north: usize, current: &mut Vec<Step>, out: &mut Vec<StepSequence>) {
        if east == 0 && north == 0 {
            out.push(StepSequence::new(current.clone()).expect("m, n >= 1"));
            return;
        }
        if east > 0 {
            current.push(Step::East);
            rec(east - 1, north, current, out);
            current.pop();
        }
        if north > 0 {
            current.push(Step::North);
            rec(east, north - 1, current, out);
            current.pop();
        }
    }
    rec(m, n, &mut current, &mut steps);
    let paths = steps.iter().map(StepSequence::to_path).collect();
    Ok(PathUniverse { m, n, paths, steps })
}

impl PathUniverse {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    fn check(&self, p: &LatticePath) -> Result<()> {
        if p.m() != self.m || p.n() != self.n {
            return Err(Error::DimensionMismatch {
                m1: self.m,
                n1: self.n,
                m2: p.m(),
                n2: p.n(),
            });
        }
        Ok(())
    }

    /// `mn D+` of each path, by walking its vertices.
    pub fn upper_statistics(&self) -> Vec<i64> {
        self.steps.iter().map(walk_upper).collect()
    }

    pub fn statistic_distribution(&self) -> BTreeMap<i64, BigCount> {
        let mut hist: BTreeMap<i64, BigCount> = BTreeMap::new();
        for s in self.upper_statistics() {
            *hist.entry(s).or_insert_with(BigUint::zero) += 1u32;
        }
        hist
    }

    pub fn downset(&self, p: &LatticePath) -> Result<BigCount> {
        self.check(p)?;
        let count = self
            .paths
            .iter()
            .filter(|q| weakly_above(p.tuple(), q.tuple()))
            .count();
        Ok(BigUint::from(count))
    }

    pub fn upset(&self, p: &LatticePath) -> Result<BigCount> {
        self.check(p)?;
        let count = self
            .paths
            .iter()
            .filter(|q| weakly_above(q.tuple(), p.tuple()))
            .count();
        Ok(BigUint::from(count))
    }

    /// For each attained value `r` of `mn D+`, the elementwise minimum of all
    /// paths with statistic at most `r`, in increasing `r`.
    pub fn profiles(&self) -> Vec<(i64, LatticePath)> {
        let stats = self.upper_statistics();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| stats[i]);
        let mut out: Vec<(i64, LatticePath)> = Vec::new();
        let mut floor = vec![self.m; self.n];
        let mut k = 0;
        while k < order.len() {
            let r = stats[order[k]];
            while k < order.len() && stats[order[k]] == r {
                for (f, &v) in floor.iter_mut().zip(self.paths[order[k]].tuple()) {
                    *f = (*f).min(v);
                }
                k += 1;
            }
            let path = LatticePath::new(self.m, floor.clone()).expect("meet of paths is a path");
            out.push((r, path));
        }
        out
    }

    /// Number of dominance chains `upper = q_0 > q_1 > ... > q_k = lower`.
    pub fn chain_count(&self, upper: &LatticePath, lower: &LatticePath) -> Result<BigCount> {
        self.check(upper)?;
        self.check(lower)?;
        if !weakly_above(upper.tuple(), lower.tuple()) {
            return Err(Error::InvalidTuple(format!(
                "{upper} does not dominate {lower}"
            )));
        }
        let mut interval: Vec<&LatticePath> = self
            .paths
            .iter()
            .filter(|q| {
                weakly_above(upper.tuple(), q.tuple()) && weakly_above(q.tuple(), lower.tuple())
            })
            .collect();
        interval.sort_by_key(|q| q.tuple().iter().sum::<usize>());
        let mut chains: Vec<BigUint> = Vec::with_capacity(interval.len());
        for (i, q) in interval.iter().enumerate() {
            let value = if q.tuple() == lower.tuple() {
                BigUint::one()
            } else {
                (0..i)
                    .filter(|&j| interval[j] != *q && weakly_above(q.tuple(), interval[j].tuple()))
                    .map(|j| chains[j].clone())
                    .sum()
            };
            chains.push(value);
        }
        let top = interval
            .iter()
            .position(|q| q.tuple() == upper.tuple())
            .expect("upper is in its own interval");
        Ok(chains[top].clone())
    }

    /// Number of maximal chains from `upper` to `lower`: chains in which no
    /// path of the universe fits strictly between consecutive members.
    pub fn maximal_chain_count(
        &self,
        upper: &LatticePath,
        lower: &LatticePath,
    ) -> Result<BigCount> {
        self.check(upper)?;
        self.check(lower)?;
        if !weakly_above(upper.tuple(), lower.tuple()) {
            return Err(Error::InvalidTuple(format!(
                "{upper} does not dominate {lower}"
            )));
        }
        let mut interval: Vec<&LatticePath> = self
            .paths
            .iter()
            .filter(|q| {
                weakly_above(upper.tuple(), q.tuple()) && weakly_above(q.tuple(), lower.tuple())
            })
            .collect();
        interval.sort_by_key(|q| q.tuple().iter().sum::<usize>());
        let strictly_above =
            |a: &LatticePath, b: &LatticePath| a != b && weakly_above(a.tuple(), b.tuple());
        let covers = |a: &LatticePath, b: &LatticePath| {
            strictly_above(a, b)
                && !interval
                    .iter()
                    .any(|z| strictly_above(a, z) && strictly_above(z, b))
        };
        let mut chains: Vec<BigUint> = Vec::with_capacity(interval.len());
        for (i, q) in interval.iter().enumerate() {
            let value = if q.tuple() == lower.tuple() {
                BigUint::one()
            } else {
                (0..i)
                    .filter(|&j| covers(q, interval[j]))
                    .map(|j| chains[j].clone())
                    .sum()
            };
            chains.push(value);
        }
        let top = interval
            .iter()
            .position(|q| q.tuple() == upper.tuple())
            .expect("upper is in its own interval");
        Ok(chains[top].clone())
    }

    /// A path strictly between two consecutive profiles, if one exists.
    pub fn find_insertable_path(&self) -> Option<Insertion> {
        let profiles = self.profiles();
        for pair in profiles.windows(2) {
            let (upper, lower) = (&pair[0].1, &pair[1].1);
            let found = self.paths.iter().find(|q| {
                *q != upper
                    && *q != lower
                    && weakly_above(upper.tuple(), q.tuple())
                    && weakly_above(q.tuple(), lower.tuple())
            });
            if let Some(q) = found {
                return Some(Insertion {
                    upper: upper.clone(),
                    path: q.clone(),
                    lower: lower.clone(),
                });
            }
        }
        None
    }
}

/// A path inserted strictly between two consecutive profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Insertion {
    pub upper: LatticePath,
    pub path: LatticePath,
    pub lower: LatticePath,
}

pub fn oracle_statistic_distribution(
    m: usize,
    n: usize,
    budget: u64,
) -> Result<BTreeMap<i64, BigCount>> {
    Ok(enumerate_all_paths(m, n, budget)?.statistic_distribution())
}

pub fn oracle_downset(p: &LatticePath, budget: u64) -> Result<BigCount> {
    enumerate_all_paths(p.m(), p.n(), budget)?.downset(p)
}

pub fn oracle_upset(p: &LatticePath, budget: u64) -> Result<BigCount> {
    enumerate_all_paths(p.m(), p.n(), budget)?.upset(p)
}

/// Lattice points on `nx - my = r` in the rectangle, by scanning all of them.
pub fn oracle_alpha(m: usize, n: usize, r: i64) -> usize {
    let (mi, ni) = (m as i64, n as i64);
    let mut count = 0;
    for x in 0..=mi {
        for y in 0..=ni {
            if ni * x - mi * y == r {
                count += 1;
            }
        }
    }
    count
}

pub fn oracle_chain_count(
    upper: &LatticePath,
    lower: &LatticePath,
    budget: u64,
) -> Result<BigCount> {
    enumerate_all_paths(upper.m(), upper.n(), budget)?.chain_count(upper, lower)
}

//! Dominance refinements of the Smirnov test.
//!
//! Between the profile just above the line `nx - my = r` and the `r`-profile
//! lie `alpha_r` unit cells, one per rectangle point on that line. A cell is
//! indexed by the lattice point `(x, y)` at its south-east corner and sits in
//! tuple row `i = n - y`, where the two profiles read `m - x + 1` and `m - x`.
//! Every ordered partition of the cells gives a chain of paths between the
//! two profiles; choosing one chain per gap gives a dominance refinement.

use std::collections::HashSet;

use num_integer::Integer;

use crate::diophantine;
use crate::lattice::{self, LatticePath};
use crate::{Error, Result};

/// A unit cell between consecutive profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GapCell {
    /// South-east corner, on the line `nx - my = r`.
    pub x: usize,
    pub y: usize,
    pub r: i64,
    /// 1-based tuple row, `n - y`.
    pub row: usize,
    /// Tuple entry on the upper side of the cell, `m - x + 1`.
    pub high: usize,
    /// Tuple entry on the lower side of the cell, `m - x`.
    pub low: usize,
}

fn check_attainable(m: usize, n: usize, r: i64) -> Result<usize> {
    if m == 0 || n == 0 {
        return Err(Error::EmptySample { m, n });
    }
    let d = m.gcd(&n) as i64;
    if r <= 0 || r > (m * n) as i64 || r % d != 0 {
        return Err(Error::NotAttainable { m, n, r });
    }
    match diophantine::alpha(m, n, r)? {
        0 => Err(Error::NotAttainable { m, n, r }),
        k => Ok(k),
    }
}

/// The cells of the gap at line `r`, in increasing `x`.
pub fn gap_cells(m: usize, n: usize, r: i64) -> Result<Vec<GapCell>> {
    check_attainable(m, n, r)?;
    let line = diophantine::solve_line(m, n, r)?;
    Ok(line
        .points
        .into_iter()
        .map(|(x, y)| GapCell {
            x,
            y,
            r,
            row: n - y,
            high: m - x + 1,
            low: m - x,
        })
        .collect())
}

/// Moves the path across each cell, lowering its row by one.
pub fn flip_cells(p: &LatticePath, cells: &[GapCell]) -> Result<LatticePath> {
    let mut rows = HashSet::with_capacity(cells.len());
    let mut t = p.tuple().to_vec();
    for cell in cells {
        if !rows.insert(cell.row) {
            return Err(Error::RowCollision(cell.row));
        }
        if cell.row == 0 || cell.row > t.len() {
            return Err(Error::InvalidTuple(format!(
                "row {} outside 1..={}",
                cell.row,
                t.len()
            )));
        }
        let found = t[cell.row - 1];
        if found != cell.high {
            return Err(Error::CellMismatch {
                row: cell.row,
                found,
                expected: cell.high,
            });
        }
        t[cell.row - 1] = cell.low;
    }
    LatticePath::new(p.m(), t)
}

/// Ordered set partitions of `{0..k}`, as block-index assignments.
///
/// Streams partitions with fewer blocks first; within a block count the
/// assignments (block of element 0, block of element 1, ...) are
/// lexicographic and surjective.
#[derive(Debug, Clone)]
pub struct OrderedPartitions {
    k: usize,
    blocks: usize,
    max_blocks: usize,
    current: Option<Vec<usize>>,
    started: bool,
}

impl OrderedPartitions {
    pub fn new(k: usize) -> Self {
        Self::with_block_range(k, if k == 0 { 0 } else { 1 }, k)
    }

    /// Only partitions into singletons (the `k!` orderings).
    pub fn unit_blocks(k: usize) -> Self {
        Self::with_block_range(k, k, k)
    }

    fn with_block_range(k: usize, min_blocks: usize, max_blocks: usize) -> Self {
        OrderedPartitions {
            k,
            blocks: min_blocks,
            max_blocks,
            current: None,
            started: false,
        }
    }

    /// Lexicographically least surjective completion of `prefix` onto `0..blocks`.
    fn complete(prefix: &mut Vec<usize>, k: usize, blocks: usize) -> bool {
        let mut used = vec![false; blocks];
        for &v in prefix.iter() {
            used[v] = true;
        }
        let mut missing = used.iter().filter(|u| !**u).count();
        while prefix.len() < k {
            let remaining = k - prefix.len() - 1;
            let choice = (0..blocks).find(|&v| missing - usize::from(!used[v]) <= remaining);
            match choice {
                Some(v) => {
                    if !used[v] {
                        used[v] = true;
                        missing -= 1;
                    }
                    prefix.push(v);
                }
                None => return false,
            }
        }
        missing == 0
    }

    fn first_with_blocks(&mut self) -> Option<Vec<usize>> {
        while self.blocks <= self.max_blocks {
            let mut a = Vec::with_capacity(self.k);
            if Self::complete(&mut a, self.k, self.blocks) {
                return Some(a);
            }
            self.blocks += 1;
        }
        None
    }

    fn successor(&mut self, a: &[usize]) -> Option<Vec<usize>> {
        for j in (0..a.len()).rev() {
            for v in a[j] + 1..self.blocks {
                let mut prefix = a[..j].to_vec();
                prefix.push(v);
                if Self::complete(&mut prefix, self.k, self.blocks) {
                    return Some(prefix);
                }
            }
        }
        self.blocks += 1;
        self.first_with_blocks()
    }
}

impl Iterator for OrderedPartitions {
    /// `(block count, assignment)`
    type Item = (usize, Vec<usize>);

    fn next(&mut self) -> Option<Self::Item> {
        let next = if !self.started {
            self.started = true;
            self.first_with_blocks()
        } else {
            let cur = self.current.take()?;
            self.successor(&cur)
        };
        self.current = next.clone();
        next.map(|a| (self.blocks, a))
    }
}

/// Chains across one gap, one per ordered partition of its cells.
#[derive(Debug, Clone)]
pub struct GapRefinements {
    upper: LatticePath,
    cells: Vec<GapCell>,
    partitions: OrderedPartitions,
    saturated_only: bool,
}

impl GapRefinements {
    fn new(m: usize, n: usize, r: i64, saturated_only: bool) -> Result<Self> {
        let cells = gap_cells(m, n, r)?;
        let upper = lattice::profile(m, n, r - 1)?;
        Ok(GapRefinements {
            upper,
            partitions: Self::partitions(cells.len(), saturated_only),
            cells,
            saturated_only,
        })
    }

    fn partitions(k: usize, saturated_only: bool) -> OrderedPartitions {
        if saturated_only {
            OrderedPartitions::unit_blocks(k)
        } else {
            OrderedPartitions::new(k)
        }
    }

    fn restart(&self) -> Self {
        GapRefinements {
            upper: self.upper.clone(),
            cells: self.cells.clone(),
            partitions: Self::partitions(self.cells.len(), self.saturated_only),
            saturated_only: self.saturated_only,
        }
    }

    pub fn cells(&self) -> &[GapCell] {
        &self.cells
    }
}

impl Iterator for GapRefinements {
    type Item = Vec<LatticePath>;

    fn next(&mut self) -> Option<Self::Item> {
        let (blocks, assign) = self.partitions.next()?;
        let mut chain = Vec::with_capacity(blocks + 1);
        chain.push(self.upper.clone());
        for b in 0..blocks {
            let flipped: Vec<GapCell> = self
                .cells
                .iter()
                .zip(&assign)
                .filter(|(_, &blk)| blk <= b)
                .map(|(c, _)| *c)
                .collect();
            chain.push(flip_cells(&self.upper, &flipped).expect("gap cells fit the upper profile"));
        }
        Some(chain)
    }
}

/// Chains from the profile above line `r` to the `r`-profile, one per
/// ordered partition of the gap's cells.
pub fn enumerate_gap_refinements(m: usize, n: usize, r: i64) -> Result<GapRefinements> {
    GapRefinements::new(m, n, r, false)
}

/// A sequence of paths, intended to be strictly decreasing in dominance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementChain {
    pub paths: Vec<LatticePath>,
}

impl RefinementChain {
    pub fn new(paths: Vec<LatticePath>) -> Self {
        RefinementChain { paths }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// The trivial refinement: the distinct profiles themselves.
pub fn profile_chain(m: usize, n: usize) -> Result<RefinementChain> {
    Ok(RefinementChain::new(
        lattice::distinct_profiles(m, n)?.paths().cloned().collect(),
    ))
}

/// Lazy stream over all dominance refinements of the `(m,n)` test.
#[derive(Debug, Clone)]
pub struct Refinements {
    start: LatticePath,
    gaps: Vec<GapRefinements>,
    segments: Vec<Vec<LatticePath>>,
    done: bool,
}

impl Iterator for Refinements {
    type Item = RefinementChain;

    fn next(&mut self) -> Option<RefinementChain> {
        if self.done {
            return None;
        }
        let mut paths = vec![self.start.clone()];
        for seg in &self.segments {
            paths.extend(seg[1..].iter().cloned());
        }
        // odometer, last gap fastest
        self.done = true;
        for g in (0..self.gaps.len()).rev() {
            if let Some(seg) = self.gaps[g].next() {
                self.segments[g] = seg;
                self.done = false;
                break;
            }
            self.gaps[g] = self.gaps[g].restart();
            self.segments[g] = self.gaps[g].next().expect("every gap has a chain");
        }
        Some(RefinementChain::new(paths))
    }
}

/// Every dominance refinement (or only the saturated ones), as a lazy stream.
pub fn enumerate_refinements(m: usize, n: usize, saturated_only: bool) -> Result<Refinements> {
    let family = lattice::distinct_profiles(m, n)?;
    let mut gaps = Vec::with_capacity(family.len());
    let mut segments = Vec::with_capacity(family.len());
    for entry in &family.entries[1..] {
        let mut gap = GapRefinements::new(m, n, entry.r, saturated_only)?;
        segments.push(gap.next().expect("every gap has a chain"));
        gaps.push(gap);
    }
    Ok(Refinements {
        start: family.entries[0].path.clone(),
        gaps,
        segments,
        done: false,
    })
}

/// A path that can be inserted strictly between two consecutive profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub r: i64,
    pub upper: LatticePath,
    pub path: LatticePath,
    pub lower: LatticePath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationVerdict {
    pub saturated: bool,
    pub witness: Option<Witness>,
}

impl SaturationVerdict {
    /// The profile chain with the witness inserted, when there is one.
    pub fn witness_chain(&self, m: usize, n: usize) -> Result<Option<RefinementChain>> {
        let Some(w) = &self.witness else {
            return Ok(None);
        };
        let mut chain = profile_chain(m, n)?;
        let pos = chain
            .paths
            .iter()
            .position(|p| *p == w.upper)
            .expect("witness sits below a profile");
        chain.paths.insert(pos + 1, w.path.clone());
        Ok(Some(chain))
    }
}

/// The test is saturated exactly when `gcd(m, n) = 1`; otherwise some line
/// carries two or more cells and flipping one of them gives a witness.
pub fn is_saturated(m: usize, n: usize) -> Result<SaturationVerdict> {
    let family = lattice::distinct_profiles(m, n)?;
    if m.gcd(&n) == 1 {
        return Ok(SaturationVerdict {
            saturated: true,
            witness: None,
        });
    }
    for pair in family.entries.windows(2) {
        let r = pair[1].r;
        let cells = gap_cells(m, n, r)?;
        if cells.len() >= 2 {
            let path = flip_cells(&pair[0].path, &cells[..1])?;
            return Ok(SaturationVerdict {
                saturated: false,
                witness: Some(Witness {
                    r,
                    upper: pair[0].path.clone(),
                    path,
                    lower: pair[1].path.clone(),
                }),
            });
        }
    }
    unreachable!("gcd > 1 leaves a line with at least two rectangle points")
}

/// Outcome of [`verify_chain`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainReport {
    pub problems: Vec<String>,
}

impl ChainReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Checks that consecutive paths strictly decrease in dominance, that each
/// step flips cells on a single line `nx - my = r` with `r > 0`, and that the
/// chain passes through every distinct profile.
pub fn verify_chain(c: &RefinementChain) -> ChainReport {
    let mut report = ChainReport::default();
    let Some(first) = c.paths.first() else {
        report.problems.push("chain is empty".into());
        return report;
    };
    let (m, n) = (first.m(), first.n());
    if let Some(bad) = c.paths.iter().find(|p| p.m() != m || p.n() != n) {
        report
            .problems
            .push(format!("path {bad} is not on the {m}x{n} grid"));
        return report;
    }
    for (k, w) in c.paths.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        if !a.strictly_dominates(b).unwrap_or(false) {
            report
                .problems
                .push(format!("step {k}: {a} does not strictly dominate {b}"));
            continue;
        }
        let mut lines = HashSet::new();
        for i in 1..=n {
            let (hi, lo) = (a.entry(i), b.entry(i));
            if hi == lo {
                continue;
            }
            if hi != lo + 1 {
                report
                    .problems
                    .push(format!("step {k}: row {i} drops by {}", hi - lo));
                continue;
            }
            let (x, y) = ((m - lo) as i64, (n - i) as i64);
            lines.insert(n as i64 * x - m as i64 * y);
        }
        if lines.len() > 1 {
            report
                .problems
                .push(format!("step {k}: cells on several lines {lines:?}"));
        } else if lines.iter().any(|&r| r <= 0) {
            report
                .problems
                .push(format!("step {k}: cells on a line with r <= 0"));
        }
    }
    match lattice::distinct_profiles(m, n) {
        Ok(family) => {
            let mut it = c.paths.iter();
            for p in family.paths() {
                if !it.any(|q| q == p) {
                    report
                        .problems
                        .push(format!("profile {p} missing from chain"));
                    break;
                }
            }
        }
        Err(e) => report.problems.push(e.to_string()),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(m: usize, t: &[usize]) -> LatticePath {
        LatticePath::new(m, t.to_vec()).unwrap()
    }

    fn tuples(chain: &[LatticePath]) -> Vec<Vec<usize>> {
        chain.iter().map(|p| p.tuple().to_vec()).collect()
    }

    #[test]
    fn gap_cell_examples() {
        let cells = gap_cells(4, 2, 2).unwrap();
        let pts: Vec<_> = cells.iter().map(|c| (c.x, c.y)).collect();
        assert_eq!(pts, vec![(1, 0), (3, 1)]);
        assert_eq!(gap_cells(5, 3, 1).unwrap().len(), 1);
        let cells = gap_cells(4, 2, 4).unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(
            flip_cells(&path(4, &[1, 3]), &cells).unwrap().tuple(),
            &[0, 2]
        );
        assert!(matches!(
            gap_cells(4, 2, 3),
            Err(Error::NotAttainable { .. })
        ));
        assert!(matches!(
            gap_cells(4, 2, 0),
            Err(Error::NotAttainable { .. })
        ));
        assert!(matches!(
            gap_cells(5, 3, 14),
            Err(Error::NotAttainable { .. })
        ));
    }

    #[test]
    fn flip_examples() {
        let cells = gap_cells(4, 2, 2).unwrap();
        let (c10, c31) = (cells[0], cells[1]);
        let top = path(4, &[2, 4]);
        assert_eq!(flip_cells(&top, &[c31]).unwrap().tuple(), &[1, 4]);
        assert_eq!(flip_cells(&top, &[c10]).unwrap().tuple(), &[2, 3]);
        assert_eq!(flip_cells(&top, &[c10, c31]).unwrap().tuple(), &[1, 3]);
        assert!(matches!(
            flip_cells(&path(4, &[1, 3]), &[c10]),
            Err(Error::CellMismatch { .. })
        ));
        assert_eq!(flip_cells(&top, &[c10, c10]), Err(Error::RowCollision(2)));
    }

    #[test]
    fn ordered_partition_stream() {
        let all: Vec<_> = OrderedPartitions::new(2).collect();
        assert_eq!(all, vec![(1, vec![0, 0]), (2, vec![0, 1]), (2, vec![1, 0])]);
        let counts: Vec<_> = (0..=6).map(|k| OrderedPartitions::new(k).count()).collect();
        assert_eq!(counts, vec![1, 1, 3, 13, 75, 541, 4683]);
        let perms: Vec<_> = (0..=5)
            .map(|k| OrderedPartitions::unit_blocks(k).count())
            .collect();
        assert_eq!(perms, vec![1, 1, 2, 6, 24, 120]);
        let distinct: HashSet<_> = OrderedPartitions::new(4).collect();
        assert_eq!(distinct.len(), 75);
    }

    #[test]
    fn gap_refinement_examples() {
        let chains: Vec<_> = enumerate_gap_refinements(4, 2, 2).unwrap().collect();
        assert_eq!(chains.len(), 3);
        assert_eq!(tuples(&chains[0]), vec![vec![2, 4], vec![1, 3]]);
        assert_eq!(tuples(&chains[1]), vec![vec![2, 4], vec![2, 3], vec![1, 3]]);
        assert_eq!(tuples(&chains[2]), vec![vec![2, 4], vec![1, 4], vec![1, 3]]);
        assert_eq!(enumerate_gap_refinements(5, 3, 1).unwrap().count(), 1);
        assert_eq!(enumerate_gap_refinements(4, 2, 4).unwrap().count(), 3);
    }

    #[test]
    fn refinement_stream_examples() {
        assert_eq!(enumerate_refinements(5, 3, false).unwrap().count(), 1);
        assert_eq!(enumerate_refinements(4, 2, false).unwrap().count(), 9);
        let sat: Vec<_> = enumerate_refinements(4, 2, true).unwrap().collect();
        assert_eq!(sat.len(), 4);
        assert!(sat.iter().all(|c| c.len() == 7));
        let distinct: HashSet<_> = sat.iter().map(|c| c.paths.clone()).collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn saturation_examples() {
        assert!(is_saturated(5, 3).unwrap().saturated);
        assert!(is_saturated(10, 9).unwrap().saturated);
        let v = is_saturated(4, 2).unwrap();
        assert!(!v.saturated);
        let w = v.witness.as_ref().unwrap();
        assert!([vec![1, 4], vec![2, 3]].contains(&w.path.tuple().to_vec()));
        let chain = v.witness_chain(4, 2).unwrap().unwrap();
        assert!(verify_chain(&chain).is_valid());
    }

    #[test]
    fn verify_chain_examples() {
        assert!(verify_chain(&profile_chain(5, 3).unwrap()).is_valid());
        let mut chain = profile_chain(4, 2).unwrap();
        chain.paths.insert(1, path(4, &[1, 4]));
        assert!(verify_chain(&chain).is_valid());
        chain.paths.insert(2, path(4, &[2, 3]));
        assert!(!verify_chain(&chain).is_valid());
        let mut missing = profile_chain(4, 2).unwrap();
        missing.paths.remove(2);
        assert!(!verify_chain(&missing).is_valid());
        assert!(!verify_chain(&RefinementChain::new(vec![])).is_valid());
    }
}

//! Lattice paths, the Gnedenko construction, Smirnov statistics, dominance
//! and r-profiles.
//!
//! A path from `(0,0)` to `(m,n)` is stored as the tuple `t_1..t_n`, where
//! `t_i = m - (largest x the path reaches at height n - i)`. Larger entries
//! mean the path stays further to the left (north-west).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::diophantine;
use crate::{Error, Result};

/// A real observation, held exactly as a rational number.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Observation(BigRational);

impl Observation {
    /// Exact conversion of a finite `f64`.
    pub fn from_f64(value: f64) -> Option<Self> {
        BigRational::from_float(value).map(Observation)
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Observation {
    type Err = Error;

    /// Parses `[+-]digits[.digits][(e|E)[+-]digits]` without any rounding.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let lit = s.trim();
        let (negative, body) = match lit.as_bytes().first() {
            Some(b'-') => (true, &lit[1..]),
            Some(b'+') => (false, &lit[1..]),
            _ => (false, lit),
        };
        let (mantissa, exp) = match body.find(['e', 'E']) {
            Some(pos) => {
                let exp: i64 = body[pos + 1..].parse().map_err(|_| bad())?;
                (&body[..pos], exp)
            }
            None => (body, 0),
        };
        let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int.is_empty() && frac.is_empty()
            || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let mut value = BigInt::from_str(&digits).map_err(|_| bad())?;
        if negative {
            value = -value;
        }
        let scale = exp - frac.len() as i64;
        if scale.unsigned_abs() > 100_000 {
            return Err(bad());
        }
        let ten = BigInt::from(10);
        let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
        let rational = if scale >= 0 {
            BigRational::from_integer(value * factor)
        } else {
            BigRational::new(value, factor)
        };
        Ok(Observation(rational))
    }
}

/// Parses a sample file: one decimal literal per line; blank lines and
/// `#` comments are ignored.
pub fn parse_sample(text: &str) -> Result<Vec<Observation>> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(Observation::from_str)
        .collect()
}

/// Two samples `xs` (size m) and `ys` (size n), each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleData {
    xs: Vec<Observation>,
    ys: Vec<Observation>,
}

impl SampleData {
    pub fn new(mut xs: Vec<Observation>, mut ys: Vec<Observation>) -> Result<Self> {
        if xs.is_empty() || ys.is_empty() {
            return Err(Error::EmptySample {
                m: xs.len(),
                n: ys.len(),
            });
        }
        xs.sort();
        ys.sort();
        Ok(SampleData { xs, ys })
    }

    pub fn from_f64(xs: &[f64], ys: &[f64]) -> Result<Self> {
        let conv = |v: &[f64]| -> Result<Vec<Observation>> {
            v.iter()
                .map(|&x| Observation::from_f64(x).ok_or_else(|| Error::Parse(x.to_string())))
                .collect()
        };
        Self::new(conv(xs)?, conv(ys)?)
    }

    pub fn xs(&self) -> &[Observation] {
        &self.xs
    }

    pub fn ys(&self) -> &[Observation] {
        &self.ys
    }

    pub fn m(&self) -> usize {
        self.xs.len()
    }

    pub fn n(&self) -> usize {
        self.ys.len()
    }
}

/// Which Smirnov statistic to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tail {
    /// `D+ = sup (F_m - G_n)`
    Upper,
    /// `D- = sup (G_n - F_m)`
    Lower,
    /// `D = sup |F_m - G_n|`
    TwoSided,
}

impl FromStr for Tail {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" => Ok(Tail::Upper),
            "lower" => Ok(Tail::Lower),
            "twosided" | "two-sided" => Ok(Tail::TwoSided),
            other => Err(Error::Parse(other.to_string())),
        }
    }
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tail::Upper => "upper",
            Tail::Lower => "lower",
            Tail::TwoSided => "twosided",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    East,
    North,
}

/// A sequence of `m` east and `n` north unit steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepSequence {
    steps: Vec<Step>,
    m: usize,
    n: usize,
}

impl StepSequence {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let m = steps.iter().filter(|&&s| s == Step::East).count();
        let n = steps.len() - m;
        if m == 0 || n == 0 {
            return Err(Error::InvalidSteps(format!(
                "need at least one step in each direction, got m = {m}, n = {n}"
            )));
        }
        Ok(StepSequence { steps, m, n })
    }

    /// Parses a string of `E`/`N` characters.
    pub fn parse(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c.to_ascii_uppercase() {
                'E' => Ok(Step::East),
                'N' => Ok(Step::North),
                _ => Err(Error::InvalidSteps(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn to_path(&self) -> LatticePath {
        steps_to_tuple(self)
    }
}

impl fmt::Display for StepSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::East => "E",
                Step::North => "N",
            })?;
        }
        Ok(())
    }
}

/// A monotone lattice path from `(0,0)` to `(m,n)` in tuple form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    m: usize,
    t: Vec<usize>,
}

impl LatticePath {
    pub fn new(m: usize, t: Vec<usize>) -> Result<Self> {
        if m == 0 || t.is_empty() {
            return Err(Error::InvalidTuple(format!(
                "grid must be at least 1x1 (m = {m}, n = {})",
                t.len()
            )));
        }
        if let Some(i) = t.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::InvalidTuple(format!(
                "t[{}] = {} > t[{}] = {}",
                i + 1,
                t[i],
                i + 2,
                t[i + 1]
            )));
        }
        if let Some(&last) = t.last() {
            if last > m {
                return Err(Error::InvalidTuple(format!("entry {last} exceeds m = {m}")));
            }
        }
        Ok(LatticePath { m, t })
    }

    /// The all-zero tuple: every east step before any north step.
    pub fn bottom(m: usize, n: usize) -> Result<Self> {
        Self::new(m, vec![0; n])
    }

    /// The all-`m` tuple: every north step before any east step.
    pub fn top(m: usize, n: usize) -> Result<Self> {
        Self::new(m, vec![m; n])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn tuple(&self) -> &[usize] {
        &self.t
    }

    /// Entry `t_i` with 1-based `i`.
    pub fn entry(&self, i: usize) -> usize {
        self.t[i - 1]
    }

    /// Largest x-coordinate the path reaches at height `y`.
    pub fn max_x_at(&self, y: usize) -> usize {
        if y >= self.n() {
            self.m
        } else {
            self.m - self.t[self.n() - y - 1]
        }
    }

    /// Smallest x-coordinate the path reaches at height `y`.
    pub fn min_x_at(&self, y: usize) -> usize {
        if y == 0 {
            0
        } else {
            self.max_x_at(y - 1)
        }
    }

    pub fn to_steps(&self) -> StepSequence {
        tuple_to_steps(self)
    }

    /// Vertices in path order, `(0,0)` through `(m,n)`.
    pub fn vertices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m + self.n() + 1);
        let (mut x, mut y) = (0, 0);
        out.push((x, y));
        for s in self.to_steps().steps() {
            match s {
                Step::East => x += 1,
                Step::North => y += 1,
            }
            out.push((x, y));
        }
        out
    }

    /// The integer `mn * D` for the chosen tail.
    pub fn statistic(&self, tail: Tail) -> i64 {
        let (m, n) = (self.m as i64, self.n() as i64);
        let upper = || {
            (1..=self.n())
                .map(|i| n * (m - self.t[i - 1] as i64) - m * (n - i as i64))
                .fold(0, i64::max)
        };
        let lower = || {
            (1..=self.n())
                .map(|i| m * (n - i as i64 + 1) - n * (m - self.t[i - 1] as i64))
                .fold(0, i64::max)
        };
        match tail {
            Tail::Upper => upper(),
            Tail::Lower => lower(),
            Tail::TwoSided => upper().max(lower()),
        }
    }

    /// The statistic as the exact fraction `D = statistic / (mn)`.
    pub fn statistic_ratio(&self, tail: Tail) -> crate::ExactRational {
        let value = self.statistic(tail).max(0) as u64;
        crate::ExactRational::new((value).into(), ((self.m * self.n()) as u64).into())
            .expect("mn > 0")
    }

    fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.m != other.m || self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                m1: self.m,
                n1: self.n(),
                m2: other.m,
                n2: other.n(),
            });
        }
        Ok(())
    }

    /// `s_i >= t_i` for every `i`.
    pub fn dominates(&self, other: &Self) -> Result<bool> {
        self.check_same_grid(other)?;
        Ok(self.t.iter().zip(&other.t).all(|(s, t)| s >= t))
    }

    /// Dominates and differs.
    pub fn strictly_dominates(&self, other: &Self) -> Result<bool> {
        Ok(self.dominates(other)? && self != other)
    }

    /// Comparison in the dominance order; `None` when incomparable.
    pub fn dominance_cmp(&self, other: &Self) -> Result<Option<Ordering>> {
        let ge = self.dominates(other)?;
        let le = other.dominates(self)?;
        Ok(match (ge, le) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        })
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (k, v) in self.t.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(">")
    }
}

/// Validates an integer tuple as a path on a grid of width `m`.
pub fn path_from_tuple(t: &[i64], m: i64) -> Result<LatticePath> {
    if m < 1 {
        return Err(Error::InvalidTuple(format!("m = {m} must be positive")));
    }
    if let Some(&neg) = t.iter().find(|&&v| v < 0) {
        return Err(Error::InvalidTuple(format!("negative entry {neg}")));
    }
    LatticePath::new(m as usize, t.iter().map(|&v| v as usize).collect())
}

pub fn steps_to_tuple(s: &StepSequence) -> LatticePath {
    let m = s.m();
    let mut t = vec![0; s.n()];
    let (mut x, mut y) = (0usize, 0usize);
    for step in s.steps() {
        match step {
            Step::East => x += 1,
            Step::North => {
                t[s.n() - y - 1] = m - x;
                y += 1;
            }
        }
    }
    LatticePath { m, t }
}

pub fn tuple_to_steps(p: &LatticePath) -> StepSequence {
    let mut steps = Vec::with_capacity(p.m + p.n());
    let mut x = 0;
    for y in 0..p.n() {
        let target = p.max_x_at(y);
        steps.extend(std::iter::repeat_n(Step::East, target - x));
        steps.push(Step::North);
        x = target;
    }
    steps.extend(std::iter::repeat_n(Step::East, p.m - x));
    StepSequence {
        steps,
        m: p.m,
        n: p.n(),
    }
}

/// The Gnedenko path of the merged sample: east for an `x`, north for a `y`.
pub fn gnedenko_path(d: &SampleData) -> Result<LatticePath> {
    let (xs, ys) = (d.xs(), d.ys());
    let mut steps = Vec::with_capacity(xs.len() + ys.len());
    let (mut i, mut j) = (0, 0);
    while i < xs.len() || j < ys.len() {
        let step = match (xs.get(i), ys.get(j)) {
            (Some(x), Some(y)) => match x.cmp(y) {
                Ordering::Less => Step::East,
                Ordering::Greater => Step::North,
                Ordering::Equal => return Err(Error::CrossSampleTie(x.to_string())),
            },
            (Some(_), None) => Step::East,
            _ => Step::North,
        };
        match step {
            Step::East => i += 1,
            Step::North => j += 1,
        }
        steps.push(step);
    }
    Ok(StepSequence::new(steps)?.to_path())
}

fn check_grid(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::EmptySample { m, n });
    }
    Ok(())
}

/// The least path (in dominance) whose vertices all satisfy `nx - my <= r`:
/// `t_i = max(0, ceil((m i - r) / n))`.
pub fn profile(m: usize, n: usize, r: i64) -> Result<LatticePath> {
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
    let t = (1..=n as i64)
        .map(|i| Integer::div_ceil(&(m as i64 * i - r), &(n as i64)).max(0) as usize)
        .collect();
    Ok(LatticePath { m, t })
}

/// One profile of a Smirnov test, indexed by the statistic value `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileEntry {
    pub r: i64,
    pub path: LatticePath,
}

/// The distinct r-profiles of the `(m,n)` test, ordered by increasing `r`
/// (hence strictly decreasing in dominance).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileFamily {
    pub m: usize,
    pub n: usize,
    pub entries: Vec<ProfileEntry>,
}

impl ProfileFamily {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn paths(&self) -> impl Iterator<Item = &LatticePath> {
        self.entries.iter().map(|e| &e.path)
    }
}

pub fn distinct_profiles(m: usize, n: usize) -> Result<ProfileFamily> {
    check_grid(m, n)?;
    let d = m.gcd(&n) as i64;
    let nm = (m * n) as i64;
    let mut entries = vec![ProfileEntry {
        r: 0,
        path: profile(m, n, 0)?,
    }];
    for r in (d..=nm).step_by(d as usize) {
        if diophantine::alpha(m, n, r)? > 0 {
            entries.push(ProfileEntry {
                r,
                path: profile(m, n, r)?,
            });
        }
    }
    Ok(ProfileFamily { m, n, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(m: usize, t: &[usize]) -> LatticePath {
        LatticePath::new(m, t.to_vec()).unwrap()
    }

    #[test]
    fn tuple_validation() {
        assert!(path_from_tuple(&[2, 2, 4], 4).is_ok());
        assert!(path_from_tuple(&[0, 0], 4).is_ok());
        assert!(matches!(
            path_from_tuple(&[3, 1], 4),
            Err(Error::InvalidTuple(_))
        ));
        assert!(matches!(
            path_from_tuple(&[-1, 1], 4),
            Err(Error::InvalidTuple(_))
        ));
        assert!(matches!(
            path_from_tuple(&[1, 5], 4),
            Err(Error::InvalidTuple(_))
        ));
        assert!(matches!(
            path_from_tuple(&[], 4),
            Err(Error::InvalidTuple(_))
        ));
    }

    #[test]
    fn step_encoding() {
        let s = StepSequence::parse("ENNEE").unwrap();
        assert_eq!((s.m(), s.n()), (3, 2));
        assert_eq!(s.to_path().tuple(), &[2, 2]);
        let north_first = StepSequence::parse("NNNEEEE").unwrap();
        assert_eq!(north_first.to_path().tuple(), &[4, 4, 4]);
        // Figure-style path N E E N N E E
        let fig = StepSequence::parse("NEENNEE").unwrap();
        assert_eq!(fig.to_path().tuple(), &[2, 2, 4]);
        assert_eq!(fig.to_path().to_steps(), fig);
        assert!(StepSequence::parse("EEE").is_err());
        assert!(StepSequence::parse("EXN").is_err());
    }

    #[test]
    fn gnedenko_construction() {
        let d = SampleData::from_f64(&[1.0, 4.0, 5.0], &[2.0, 3.0]).unwrap();
        assert_eq!(gnedenko_path(&d).unwrap().tuple(), &[2, 2]);

        let d = SampleData::from_f64(&[1.0, 2.0], &[3.0, 4.0, 5.0]).unwrap();
        let p = gnedenko_path(&d).unwrap();
        assert_eq!(p.statistic(Tail::Upper), 6);

        let d = SampleData::from_f64(&[1.0], &[1.0]).unwrap();
        assert!(matches!(gnedenko_path(&d), Err(Error::CrossSampleTie(_))));
    }

    #[test]
    fn parse_decimal_literals() {
        let a: Observation = "1.0".parse().unwrap();
        let b: Observation = "1".parse().unwrap();
        let c: Observation = "10e-1".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        let tiny: Observation = "0.1".parse().unwrap();
        assert_eq!(tiny.value(), &BigRational::new(1.into(), 10.into()));
        assert!("-2.5E+1".parse::<Observation>().is_ok());
        assert!(".5".parse::<Observation>().is_ok());
        for bad in ["", ".", "1.2.3", "abc", "1e", "--1", "nan"] {
            assert!(bad.parse::<Observation>().is_err(), "{bad}");
        }
    }

    #[test]
    fn sample_file_parsing() {
        let text = "# header\n1.5\n\n  2  # trailing\n-3e0\n";
        let obs = parse_sample(text).unwrap();
        assert_eq!(obs.len(), 3);
        assert!(parse_sample("1\nx\n").is_err());
    }

    #[test]
    fn statistic_examples() {
        let fig = path(4, &[2, 2, 4]);
        assert_eq!(fig.statistic(Tail::Upper), 2);
        assert_eq!(
            LatticePath::bottom(4, 3).unwrap().statistic(Tail::Upper),
            12
        );
        assert_eq!(LatticePath::top(4, 3).unwrap().statistic(Tail::Upper), 0);
        assert_eq!(LatticePath::top(4, 3).unwrap().statistic(Tail::Lower), 12);
        assert_eq!(
            fig.statistic(Tail::TwoSided),
            fig.statistic(Tail::Upper).max(fig.statistic(Tail::Lower))
        );
    }

    #[test]
    fn statistic_matches_vertex_scan() {
        let fig = path(4, &[2, 2, 4]);
        let best = fig
            .vertices()
            .iter()
            .map(|&(x, y)| 3 * x as i64 - 4 * y as i64)
            .max()
            .unwrap();
        assert_eq!(best, 2);
        assert_eq!(fig.vertices().len(), 8);
    }

    #[test]
    fn dominance_examples() {
        let a = path(4, &[2, 4]);
        let b = path(4, &[1, 3]);
        assert!(a.dominates(&b).unwrap());
        assert!(a.dominates(&a).unwrap());
        let (p, q) = (path(4, &[1, 4]), path(4, &[2, 3]));
        assert!(!p.dominates(&q).unwrap());
        assert!(!q.dominates(&p).unwrap());
        assert_eq!(p.dominance_cmp(&q).unwrap(), None);
        assert!(matches!(
            a.dominates(&path(5, &[1, 3])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn profile_examples() {
        assert_eq!(profile(4, 2, 0).unwrap().tuple(), &[2, 4]);
        assert_eq!(profile(4, 2, 1).unwrap().tuple(), &[2, 4]);
        assert_eq!(profile(4, 2, 2).unwrap().tuple(), &[1, 3]);
        assert_eq!(profile(5, 3, 0).unwrap().tuple(), &[2, 4, 5]);
        assert_eq!(profile(5, 3, 1).unwrap().tuple(), &[2, 3, 5]);
        assert!(matches!(profile(4, 2, -1), Err(Error::Range { .. })));
        assert!(matches!(profile(4, 2, 9), Err(Error::Range { .. })));
    }

    #[test]
    fn distinct_profile_examples() {
        let fam = distinct_profiles(3, 3).unwrap();
        let tuples: Vec<_> = fam.paths().map(|p| p.tuple().to_vec()).collect();
        assert_eq!(
            tuples,
            vec![vec![1, 2, 3], vec![0, 1, 2], vec![0, 0, 1], vec![0, 0, 0]]
        );
        let rs: Vec<_> = fam.entries.iter().map(|e| e.r).collect();
        assert_eq!(rs, vec![0, 3, 6, 9]);

        let fam = distinct_profiles(4, 2).unwrap();
        assert_eq!(
            fam.entries.iter().map(|e| e.r).collect::<Vec<_>>(),
            vec![0, 2, 4, 6, 8]
        );
        assert_eq!(distinct_profiles(5, 3).unwrap().len(), 12);
    }
}

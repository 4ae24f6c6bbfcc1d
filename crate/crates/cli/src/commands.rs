use std::path::Path;

use num_integer::Integer;
use smirnov_core::counting;
use smirnov_core::diophantine;
use smirnov_core::lattice::{self, parse_sample, SampleData, Tail};
use smirnov_core::oracle::{self, PathUniverse};
use smirnov_core::refinement;
use smirnov_core::Error as CoreError;

use crate::output::{
    decimal, tuple, CheckStatus, LevelRow, LevelsReport, OutputDocument, Payload, RefineReport,
    TableReport, TailRow, TestReport, VerifyCheck, VerifyReport, WitnessReport,
};
use crate::{CliError, Result};

fn read_sample(path: &Path) -> Result<Vec<lattice::Observation>> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(parse_sample(&text)?)
}

/// Reads both sample files and runs [`cmd_test_samples`].
pub fn cmd_test(x_file: &Path, y_file: &Path, tail: Tail, digits: u32) -> Result<OutputDocument> {
    let data = SampleData::new(read_sample(x_file)?, read_sample(y_file)?)?;
    cmd_test_samples(&data, tail, digits)
}

pub fn cmd_test_samples(data: &SampleData, tail: Tail, digits: u32) -> Result<OutputDocument> {
    let path = lattice::gnedenko_path(data)?;
    let (m, n) = (path.m(), path.n());
    let stat = path.statistic(tail);
    let ratio = path.statistic_ratio(tail);
    let mut report = TestReport {
        m,
        n,
        d: m.gcd(&n),
        tail: tail.to_string(),
        path: tuple(&path),
        statistic_int: stat,
        statistic_decimal: decimal(&ratio, digits),
        statistic: ratio,
        tail_probability: None,
        tail_probability_decimal: None,
        profile_r: None,
        profile: None,
        level: None,
        level_decimal: None,
    };
    if tail == Tail::Upper {
        let p = counting::tail_probability(m, n, stat)?;
        report.tail_probability_decimal = Some(decimal(&p, digits));
        report.tail_probability = Some(p);
        let prof = lattice::profile(m, n, stat)?;
        let level = counting::dominance_level(&prof);
        report.profile_r = Some(stat);
        report.profile = Some(tuple(&prof));
        report.level_decimal = Some(decimal(&level, digits));
        report.level = Some(level);
    }
    Ok(OutputDocument::new(Payload::Test(report)))
}

fn check_sizes(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(CliError::Usage(format!(
            "sample sizes must be positive, got {m} and {n}"
        )));
    }
    Ok(())
}

/// Both level conventions for the `(m,n)` test.
pub fn cmd_levels(m: usize, n: usize, digits: u32) -> Result<OutputDocument> {
    check_sizes(m, n)?;
    let table = counting::level_table(m, n)?;
    let levels = table
        .entries
        .iter()
        .map(|e| LevelRow {
            r: e.r,
            profile: tuple(&e.profile),
            down_set: e.down_set.to_string(),
            level_decimal: decimal(&e.level, digits),
            level: e.level.clone(),
        })
        .collect();
    let tails = counting::tail_table(m, n)?
        .into_iter()
        .map(|(r, p)| TailRow {
            r,
            tail_probability_decimal: decimal(&p, digits),
            tail_probability: p,
        })
        .collect();
    Ok(OutputDocument::new(Payload::Levels(LevelsReport {
        m,
        n,
        d: m.gcd(&n),
        total_paths: table.total.to_string(),
        levels,
        tails,
    })))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableKind {
    /// Natural significance levels of the test.
    Natural,
    /// Levels of its saturated dominance refinements.
    Saturated,
}

/// Grid of level counts for `m` in `3..=max_m` and `n` in `3..=max_n`, both ascending.
pub fn cmd_table(kind: TableKind, max_m: usize, max_n: usize) -> Result<OutputDocument> {
    if max_m < 3 || max_n < 3 {
        return Err(CliError::Usage(format!(
            "table bounds start at 3, got --max-m {max_m} --max-n {max_n}"
        )));
    }
    let rows: Vec<usize> = (3..=max_m).collect();
    let cols: Vec<usize> = (3..=max_n).collect();
    let cells = rows
        .iter()
        .map(|&m| {
            cols.iter()
                .map(|&n| {
                    let v = match kind {
                        TableKind::Natural => counting::natural_level_count(m, n)?,
                        TableKind::Saturated => counting::saturated_level_count(m, n)?,
                    };
                    u64::try_from(&v).map_err(|_| CliError::Usage(format!("count {v} overflows")))
                })
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let kind = match kind {
        TableKind::Natural => "natural",
        TableKind::Saturated => "saturated",
    };
    Ok(OutputDocument::new(Payload::Table(TableReport {
        kind: kind.to_string(),
        rows,
        cols,
        cells,
    })))
}

/// Refinement counts, the saturation verdict and up to `limit` explicit chains.
pub fn cmd_refine(
    m: usize,
    n: usize,
    saturated_only: bool,
    limit: usize,
) -> Result<OutputDocument> {
    check_sizes(m, n)?;
    let verdict = refinement::is_saturated(m, n)?;
    let witness = verdict.witness.as_ref().map(|w| WitnessReport {
        r: w.r,
        upper: tuple(&w.upper),
        path: tuple(&w.path),
        lower: tuple(&w.lower),
    });
    let chains = refinement::enumerate_refinements(m, n, saturated_only)?
        .take(limit)
        .map(|c| c.paths.iter().map(tuple).collect())
        .collect();
    Ok(OutputDocument::new(Payload::Refine(RefineReport {
        m,
        n,
        d: m.gcd(&n),
        natural_levels: counting::natural_level_count(m, n)?.to_string(),
        saturated_levels: counting::saturated_level_count(m, n)?.to_string(),
        refinement_count: counting::refinement_count(m, n)?.to_string(),
        saturated_refinement_count: counting::saturated_refinement_count(m, n)?.to_string(),
        saturated: verdict.saturated,
        witness,
        saturated_only,
        limit,
        chains,
    })))
}

struct Checks(Vec<VerifyCheck>);

impl Checks {
    fn record(&mut self, name: &str, outcome: std::result::Result<String, String>) {
        let (status, detail) = match outcome {
            Ok(d) => (CheckStatus::Pass, d),
            Err(d) => (CheckStatus::Fail, d),
        };
        self.0.push(VerifyCheck {
            name: name.to_string(),
            status,
            detail,
        });
    }

    fn skip(&mut self, name: &str, detail: String) {
        self.0.push(VerifyCheck {
            name: name.to_string(),
            status: CheckStatus::Skipped,
            detail,
        });
    }
}

type Outcome = std::result::Result<String, String>;

fn ensure(ok: bool, pass: impl Into<String>, fail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(pass.into())
    } else {
        Err(fail())
    }
}

fn core<T>(r: smirnov_core::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Chain-count check is limited to gaps whose cell count keeps the interval small.
const MAX_CHAIN_CELLS: usize = 6;
/// All-path down-set comparison runs only below this universe size.
const MAX_ALL_PATH_UNIVERSE: usize = 5_000;

/// Cross-checks every closed form against its independent route at size `(m,n)`.
pub fn cmd_verify(m: usize, n: usize, budget: u64) -> Result<OutputDocument> {
    check_sizes(m, n)?;
    let mut checks = Checks(Vec::new());
    let nm = (m * n) as i64;
    let d = m.gcd(&n);

    checks.record(
        "alpha: closed form = lattice scan",
        (|| -> Outcome {
            for r in 0..=nm {
                let a = core(diophantine::alpha(m, n, r))?;
                let b = oracle::oracle_alpha(m, n, r);
                if a != b {
                    return Err(format!("r = {r}: closed form {a}, scan {b}"));
                }
            }
            Ok(format!("{} values of r", nm + 1))
        })(),
    );

    checks.record(
        "spectrum: closed form = tally, sum identities",
        (|| -> Outcome {
            let s = core(diophantine::spectrum(m, n))?;
            let t = core(diophantine::tally_spectrum(m, n))?;
            ensure(s == t, format!("s = {:?}", s.s), || {
                format!("closed {:?} vs tally {:?}", s.s, t.s)
            })?;
            ensure(s.total() == (m * n / d) as u64, "", || {
                "sum s_k != nm/d".into()
            })?;
            ensure(
                s.weighted_total() == (((n + 1) * (m + 1)) as u64 - (d as u64 + 1)) / 2,
                format!("s = {:?}", s.s),
                || "sum k s_k mismatch".into(),
            )
        })(),
    );

    checks.record(
        "natural levels: formula = 1 + #attainable r = #profiles",
        (|| -> Outcome {
            let f = core(counting::natural_level_count(m, n))?;
            let s = core(counting::natural_level_count_by_sum(m, n))?;
            let p = core(lattice::distinct_profiles(m, n))?.len();
            ensure(f == s.into() && f == p.into(), f.to_string(), || {
                format!("{f} / {s} / {p}")
            })
        })(),
    );

    checks.record(
        "saturated levels: formula = 1 + sum alpha",
        (|| -> Outcome {
            let f = core(counting::saturated_level_count(m, n))?;
            let s = core(counting::saturated_level_count_by_sum(m, n))?;
            ensure(f == s.into(), f.to_string(), || format!("{f} vs {s}"))
        })(),
    );

    checks.record(
        "refinement counts: formula = product over lines",
        (|| -> Outcome {
            let (all, sat) = core(counting::refinement_counts_by_product(m, n))?;
            let fa = core(counting::refinement_count(m, n))?;
            let fs = core(counting::saturated_refinement_count(m, n))?;
            ensure(
                all == fa && sat == fs,
                format!("{fa} refinements, {fs} saturated"),
                || format!("formula {fa}/{fs}, product {all}/{sat}"),
            )
        })(),
    );

    checks.record(
        "profiles: Kreweras determinant = dynamic program",
        (|| -> Outcome {
            let fam = core(lattice::distinct_profiles(m, n))?;
            for p in fam.paths() {
                let (k, c) = (counting::kreweras_count(p), counting::count_dominated(p));
                if k != c {
                    return Err(format!("{p}: determinant {k}, DP {c}"));
                }
            }
            Ok(format!("{} profiles", fam.len()))
        })(),
    );

    checks.record(
        "gaps: flipping all cells maps each profile to the next",
        (|| -> Outcome {
            let fam = core(lattice::distinct_profiles(m, n))?;
            for w in fam.entries.windows(2) {
                let cells = core(refinement::gap_cells(m, n, w[1].r))?;
                let flipped = core(refinement::flip_cells(&w[0].path, &cells))?;
                if flipped != w[1].path {
                    return Err(format!(
                        "r = {}: got {flipped}, expected {}",
                        w[1].r, w[1].path
                    ));
                }
            }
            Ok(format!("{} gaps", fam.len() - 1))
        })(),
    );

    let saturation = refinement::is_saturated(m, n)?;
    checks.record(
        "saturation verdict: saturated iff gcd = 1",
        (|| -> Outcome {
            ensure(
                saturation.saturated == (d == 1),
                format!("saturated = {}", saturation.saturated),
                || format!("verdict {} with gcd {d}", saturation.saturated),
            )?;
            match core(saturation.witness_chain(m, n))? {
                Some(chain) => {
                    let report = refinement::verify_chain(&chain);
                    ensure(report.is_valid(), "witness chain verifies", || {
                        report.problems.join("; ")
                    })
                }
                None => Ok("no witness needed".into()),
            }
        })(),
    );

    const ENUMERATED: [&str; 6] = [
        "universe: C(m+n,n) distinct paths",
        "statistic: tuple formula = vertex walk",
        "tail probabilities = oracle histogram tails",
        "profiles = sublevel-set minima",
        "down-sets: DP = Kreweras = oracle",
        "saturation: exhaustive insertion search",
    ];
    match oracle::enumerate_all_paths(m, n, budget) {
        Ok(universe) => enumeration_checks(&mut checks, &universe, saturation.saturated)?,
        Err(e @ CoreError::BudgetExceeded { .. }) => {
            for name in ENUMERATED
                .iter()
                .chain(["gap chains: oracle count = ordered Bell"].iter())
            {
                checks.skip(name, e.to_string());
            }
        }
        Err(e) => return Err(e.into()),
    }

    let passed = checks.0.iter().all(|c| c.status != CheckStatus::Fail);
    Ok(OutputDocument::new(Payload::Verify(VerifyReport {
        m,
        n,
        budget,
        passed,
        checks: checks.0,
    })))
}

fn enumeration_checks(checks: &mut Checks, u: &PathUniverse, saturated: bool) -> Result<()> {
    let (m, n) = (u.m, u.n);
    let total = counting::path_total(m, n);

    checks.record("universe: C(m+n,n) distinct paths", {
        let distinct: std::collections::HashSet<_> = u.paths.iter().collect();
        ensure(
            total == u.len().into() && distinct.len() == u.len(),
            format!("{} paths", u.len()),
            || {
                format!(
                    "{} enumerated, {} distinct, expected {total}",
                    u.len(),
                    distinct.len()
                )
            },
        )
    });

    let stats = u.upper_statistics();
    checks.record(
        "statistic: tuple formula = vertex walk",
        (|| -> Outcome {
            for (p, &s) in u.paths.iter().zip(&stats) {
                if p.statistic(Tail::Upper) != s {
                    return Err(format!(
                        "{p}: formula {}, walk {s}",
                        p.statistic(Tail::Upper)
                    ));
                }
            }
            Ok(format!("{} paths", u.len()))
        })(),
    );

    checks.record(
        "tail probabilities = oracle histogram tails",
        (|| -> Outcome {
            let hist = u.statistic_distribution();
            let tails = core(counting::tail_table(m, n))?;
            if tails.len() != hist.len() {
                return Err(format!(
                    "{} attainable r, {} histogram keys",
                    tails.len(),
                    hist.len()
                ));
            }
            for (r, p) in &tails {
                let at_least: num_bigint::BigUint = hist.range(r..).map(|(_, c)| c.clone()).sum();
                let want = core(smirnov_core::ExactRational::new(at_least, total.clone()))?;
                if &want != p {
                    return Err(format!("r = {r}: {p} vs oracle {want}"));
                }
            }
            Ok(format!("{} values", tails.len()))
        })(),
    );

    checks.record(
        "profiles = sublevel-set minima",
        (|| -> Outcome {
            let fam = core(lattice::distinct_profiles(m, n))?;
            let want: Vec<_> = fam.entries.iter().map(|e| (e.r, e.path.clone())).collect();
            let got = u.profiles();
            ensure(got == want, format!("{} profiles", got.len()), || {
                format!(
                    "oracle found {} profiles, closed form {}",
                    got.len(),
                    want.len()
                )
            })
        })(),
    );

    checks.record(
        "down-sets: DP = Kreweras = oracle",
        (|| -> Outcome {
            let fam = core(lattice::distinct_profiles(m, n))?;
            let all = u.len() <= MAX_ALL_PATH_UNIVERSE;
            let targets: Vec<_> = if all {
                u.paths.iter().collect()
            } else {
                fam.paths().collect()
            };
            for p in &targets {
                let o = core(u.downset(p))?;
                let c = counting::count_dominated(p);
                let k = counting::kreweras_count(p);
                if o != c || o != k {
                    return Err(format!("{p}: oracle {o}, DP {c}, determinant {k}"));
                }
            }
            Ok(format!(
                "{} {}",
                targets.len(),
                if all { "paths" } else { "profiles" }
            ))
        })(),
    );

    checks.record("saturation: exhaustive insertion search", {
        match u.find_insertable_path() {
            None => ensure(saturated, "no insertable path found", || {
                "no insertable path, but gcd > 1".into()
            }),
            Some(ins) => ensure(
                !saturated,
                format!("insertable path {} found", ins.path),
                || format!("found {} although gcd = 1", ins.path),
            ),
        }
    });

    checks.record(
        "gap chains: oracle count = ordered Bell",
        (|| -> Outcome {
            let fam = core(lattice::distinct_profiles(m, n))?;
            let mut checked = 0;
            for w in fam.entries.windows(2) {
                let k = core(diophantine::alpha(m, n, w[1].r))?;
                if k > MAX_CHAIN_CELLS {
                    continue;
                }
                let o = core(u.chain_count(&w[0].path, &w[1].path))?;
                let b = core(counting::ordered_bell(k as i64))?;
                let e = core(refinement::enumerate_gap_refinements(m, n, w[1].r))?.count();
                if o != b || o != e.into() {
                    return Err(format!(
                        "r = {}: oracle {o}, B_{k} = {b}, enumerated {e}",
                        w[1].r
                    ));
                }
                checked += 1;
            }
            Ok(format!("{checked} gaps"))
        })(),
    );
    Ok(())
}

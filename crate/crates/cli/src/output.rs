use std::fmt::Write as _;

use serde::Serialize;
use smirnov_core::{ExactRational, LatticePath};

/// Output encoding selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

pub(crate) fn tuple(p: &LatticePath) -> Vec<usize> {
    p.tuple().to_vec()
}

pub(crate) fn decimal(q: &ExactRational, digits: u32) -> String {
    q.to_sig_decimal(digits).to_string()
}

fn show_tuple(t: &[usize]) -> String {
    let inner: Vec<String> = t.iter().map(usize::to_string).collect();
    format!("<{}>", inner.join(","))
}

#[derive(Debug, Clone, Serialize)]
pub struct TestReport {
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub tail: String,
    pub path: Vec<usize>,
    pub statistic_int: i64,
    pub statistic: ExactRational,
    pub statistic_decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_probability: Option<ExactRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_probability_decimal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile_r: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<ExactRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level_decimal: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelRow {
    pub r: i64,
    pub profile: Vec<usize>,
    pub down_set: String,
    pub level: ExactRational,
    pub level_decimal: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TailRow {
    pub r: i64,
    pub tail_probability: ExactRational,
    pub tail_probability_decimal: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelsReport {
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub total_paths: String,
    /// Down-set probabilities of the distinct profiles, increasing.
    pub levels: Vec<LevelRow>,
    /// `P(mn D+ >= r)` for every attainable `r`, increasing in `r`.
    pub tails: Vec<TailRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub kind: String,
    /// Row labels (values of m).
    pub rows: Vec<usize>,
    /// Column labels (values of n).
    pub cols: Vec<usize>,
    pub cells: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub r: i64,
    pub upper: Vec<usize>,
    pub path: Vec<usize>,
    pub lower: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RefineReport {
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub natural_levels: String,
    pub saturated_levels: String,
    pub refinement_count: String,
    pub saturated_refinement_count: String,
    pub saturated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    pub saturated_only: bool,
    pub limit: usize,
    pub chains: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyCheck {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub m: usize,
    pub n: usize,
    pub budget: u64,
    pub passed: bool,
    pub checks: Vec<VerifyCheck>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Test(TestReport),
    Levels(LevelsReport),
    Table(TableReport),
    Refine(RefineReport),
    Verify(VerifyReport),
}

/// A command result ready to be rendered.
#[derive(Debug, Clone)]
pub struct OutputDocument {
    pub payload: Payload,
}

impl OutputDocument {
    pub fn new(payload: Payload) -> Self {
        OutputDocument { payload }
    }

    /// Zero unless this is a verification report with a failing check.
    pub fn exit_code(&self) -> i32 {
        match &self.payload {
            Payload::Verify(v) if !v.passed => 1,
            _ => 0,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.payload).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
            Format::Human => self.render_human(),
        }
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut row = |fields: &[String]| w.write_record(fields).expect("in-memory write");
        let s = |v: &dyn ToString| v.to_string();
        match &self.payload {
            Payload::Test(t) => {
                row(&[s(&"key"), s(&"value")]);
                row(&[s(&"m"), s(&t.m)]);
                row(&[s(&"n"), s(&t.n)]);
                row(&[s(&"d"), s(&t.d)]);
                row(&[s(&"tail"), t.tail.clone()]);
                row(&[s(&"path"), show_tuple(&t.path)]);
                row(&[s(&"statistic_int"), s(&t.statistic_int)]);
                row(&[s(&"statistic"), s(&t.statistic)]);
                row(&[s(&"statistic_decimal"), t.statistic_decimal.clone()]);
                if let (Some(p), Some(pd)) = (&t.tail_probability, &t.tail_probability_decimal) {
                    row(&[s(&"tail_probability"), s(p)]);
                    row(&[s(&"tail_probability_decimal"), pd.clone()]);
                }
                if let (Some(r), Some(p), Some(l), Some(ld)) =
                    (t.profile_r, &t.profile, &t.level, &t.level_decimal)
                {
                    row(&[s(&"profile_r"), s(&r)]);
                    row(&[s(&"profile"), show_tuple(p)]);
                    row(&[s(&"level"), s(l)]);
                    row(&[s(&"level_decimal"), ld.clone()]);
                }
            }
            Payload::Levels(l) => {
                row(&["kind", "r", "profile", "count", "value", "decimal"].map(String::from));
                for e in &l.levels {
                    row(&[
                        s(&"level"),
                        s(&e.r),
                        show_tuple(&e.profile),
                        e.down_set.clone(),
                        s(&e.level),
                        e.level_decimal.clone(),
                    ]);
                }
                for e in &l.tails {
                    row(&[
                        s(&"tail"),
                        s(&e.r),
                        String::new(),
                        String::new(),
                        s(&e.tail_probability),
                        e.tail_probability_decimal.clone(),
                    ]);
                }
            }
            Payload::Table(t) => {
                let mut header = vec![s(&"m\\n")];
                header.extend(t.cols.iter().map(|c| c.to_string()));
                row(&header);
                for (m, cells) in t.rows.iter().zip(&t.cells) {
                    let mut r = vec![s(m)];
                    r.extend(cells.iter().map(|c| c.to_string()));
                    row(&r);
                }
            }
            Payload::Refine(r) => {
                row(&["chain", "step", "path"].map(String::from));
                for (k, chain) in r.chains.iter().enumerate() {
                    for (j, p) in chain.iter().enumerate() {
                        row(&[s(&k), s(&j), show_tuple(p)]);
                    }
                }
            }
            Payload::Verify(v) => {
                row(&["check", "status", "detail"].map(String::from));
                for c in &v.checks {
                    row(&[
                        c.name.clone(),
                        status_word(c.status).to_string(),
                        c.detail.clone(),
                    ]);
                }
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    fn render_human(&self) -> String {
        let mut out = String::new();
        match &self.payload {
            Payload::Test(t) => {
                let _ = writeln!(out, "m = {}, n = {}, gcd = {}", t.m, t.n, t.d);
                let _ = writeln!(out, "path            {}", show_tuple(&t.path));
                let _ = writeln!(out, "tail            {}", t.tail);
                let _ = writeln!(out, "mn*D            {}", t.statistic_int);
                let _ = writeln!(
                    out,
                    "D               {} ({})",
                    t.statistic, t.statistic_decimal
                );
                if let (Some(p), Some(pd)) = (&t.tail_probability, &t.tail_probability_decimal) {
                    let _ = writeln!(out, "P(mn*D+ >= obs) {p} ({pd})");
                }
                if let (Some(r), Some(p), Some(l), Some(ld)) =
                    (t.profile_r, &t.profile, &t.level, &t.level_decimal)
                {
                    let _ = writeln!(out, "profile         r = {r}: {}", show_tuple(p));
                    let _ = writeln!(out, "down-set level  {l} ({ld})");
                }
            }
            Payload::Levels(l) => {
                let _ = writeln!(
                    out,
                    "m = {}, n = {}, gcd = {}, paths = {}",
                    l.m, l.n, l.d, l.total_paths
                );
                let _ = writeln!(out, "\nDown-set levels (paths dominated by each profile)");
                let width = l
                    .levels
                    .iter()
                    .map(|e| show_tuple(&e.profile).len())
                    .max()
                    .unwrap_or(7)
                    .max(7);
                let _ = writeln!(
                    out,
                    "{:>6}  {:<width$}  {:>12}  {:>12}  level",
                    "r", "profile", "down-set", "decimal"
                );
                for e in &l.levels {
                    let _ = writeln!(
                        out,
                        "{:>6}  {:<width$}  {:>12}  {:>12}  {}",
                        e.r,
                        show_tuple(&e.profile),
                        e.down_set,
                        e.level_decimal,
                        e.level
                    );
                }
                let _ = writeln!(out, "\nTail probabilities P(mn*D+ >= r)");
                let _ = writeln!(out, "{:>6}  {:>12}  probability", "r", "decimal");
                for e in &l.tails {
                    let _ = writeln!(
                        out,
                        "{:>6}  {:>12}  {}",
                        e.r, e.tail_probability_decimal, e.tail_probability
                    );
                }
            }
            Payload::Table(t) => {
                let _ = writeln!(out, "{} levels", t.kind);
                let _ = write!(out, "{:>5} |", "m\\n");
                for c in &t.cols {
                    let _ = write!(out, "{c:>5}");
                }
                let _ = writeln!(out);
                let _ = writeln!(out, "{}", "-".repeat(7 + 5 * t.cols.len()));
                for (m, cells) in t.rows.iter().zip(&t.cells) {
                    let _ = write!(out, "{m:>5} |");
                    for c in cells {
                        let _ = write!(out, "{c:>5}");
                    }
                    let _ = writeln!(out);
                }
            }
            Payload::Refine(r) => {
                let _ = writeln!(out, "m = {}, n = {}, gcd = {}", r.m, r.n, r.d);
                let _ = writeln!(out, "natural levels              {}", r.natural_levels);
                let _ = writeln!(out, "saturated refinement levels {}", r.saturated_levels);
                let _ = writeln!(out, "dominance refinements       {}", r.refinement_count);
                let _ = writeln!(
                    out,
                    "saturated refinements       {}",
                    r.saturated_refinement_count
                );
                let _ = writeln!(out, "saturated: {}", r.saturated);
                if let Some(w) = &r.witness {
                    let _ = writeln!(
                        out,
                        "witness: {} between {} and {} (line r = {})",
                        show_tuple(&w.path),
                        show_tuple(&w.upper),
                        show_tuple(&w.lower),
                        w.r
                    );
                }
                let what = if r.saturated_only {
                    "saturated refinements"
                } else {
                    "refinements"
                };
                let _ = writeln!(out, "\nfirst {} {what}:", r.chains.len());
                for (k, chain) in r.chains.iter().enumerate() {
                    let paths: Vec<String> = chain.iter().map(|p| show_tuple(p)).collect();
                    let _ = writeln!(out, "{:>4}: {}", k + 1, paths.join(" > "));
                }
            }
            Payload::Verify(v) => {
                let _ = writeln!(out, "verify m = {}, n = {} (budget {})", v.m, v.n, v.budget);
                for c in &v.checks {
                    let _ = writeln!(
                        out,
                        "[{:<4}] {}: {}",
                        status_word(c.status),
                        c.name,
                        c.detail
                    );
                }
                let _ = writeln!(
                    out,
                    "{}",
                    if v.passed {
                        "all checks passed"
                    } else {
                        "FAILED"
                    }
                );
            }
        }
        out
    }
}

fn status_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Skipped => "skip",
    }
}

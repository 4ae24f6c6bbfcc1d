use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid path tuple: {0}")]
    InvalidTuple(String),

    #[error("invalid step sequence: {0}")]
    InvalidSteps(String),

    #[error("dimension mismatch: ({m1},{n1}) vs ({m2},{n2})")]
    DimensionMismatch {
        m1: usize,
        n1: usize,
        m2: usize,
        n2: usize,
    },

    #[error("{name} = {value} is outside [{low}, {high}]")]
    Range {
        name: &'static str,
        value: i64,
        low: i64,
        high: i64,
    },

    #[error("sample sizes must be positive (m = {m}, n = {n})")]
    EmptySample { m: usize, n: usize },

    #[error("value {0} occurs in both samples")]
    CrossSampleTie(String),

    #[error("cannot parse {0:?} as a decimal literal")]
    Parse(String),

    #[error("negative argument {0}")]
    NegativeArgument(i64),

    #[error("r = {r} is not attainable for m = {m}, n = {n}")]
    NotAttainable { m: usize, n: usize, r: i64 },

    #[error("path has t[{row}] = {found}, cell expects {expected}")]
    CellMismatch {
        row: usize,
        found: usize,
        expected: usize,
    },

    #[error("two cells share row {0}")]
    RowCollision(usize),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("enumeration needs {needed} items, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
}

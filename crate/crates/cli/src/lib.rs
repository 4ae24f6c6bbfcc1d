//! Command implementations behind the `smirnov` binary.
//!
//! Every command returns an [`OutputDocument`] which renders as human-readable
//! text, JSON or CSV. Exact rationals are always emitted as `num/den` strings
//! next to a rounded decimal.

mod commands;
mod output;

pub use commands::{
    cmd_levels, cmd_refine, cmd_table, cmd_test, cmd_test_samples, cmd_verify, TableKind,
};
pub use output::{
    CheckStatus, Format, LevelRow, LevelsReport, OutputDocument, Payload, RefineReport,
    TableReport, TailRow, TestReport, VerifyCheck, VerifyReport, WitnessReport,
};

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] smirnov_core::Error),

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

//! Exact combinatorics for the upper-tailed Smirnov two-sample test.
//!
//! A pair of samples of sizes `m` and `n` is encoded as a monotone lattice
//! path from `(0,0)` to `(m,n)`. The test's critical regions are the sets of
//! paths dominated by its *profiles*, and the crate provides:
//!
//! * [`lattice`]: paths, the Gnedenko construction, statistics, dominance and profiles,
//! * [`diophantine`]: lattice points on the lines `nx - my = r` inside the rectangle,
//! * [`counting`]: exact path counts, significance levels and closed-form counts,
//! * [`refinement`]: constructive dominance refinements and saturation,
//! * [`oracle`]: brute-force reference implementations for small sizes.
//!
//! All arithmetic is exact; probabilities are reduced ratios of big integers.

pub mod counting;
pub mod diophantine;
mod error;
pub mod lattice;
pub mod oracle;
pub mod rational;
pub mod refinement;

pub use error::{Error, Result};
pub use lattice::{LatticePath, SampleData, Step, StepSequence, Tail};
pub use rational::{ExactRational, SigDecimal};

/// Arbitrary-precision nonnegative integer used for all counts.
pub type BigCount = num_bigint::BigUint;

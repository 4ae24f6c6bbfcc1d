use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use smirnov_cli::{Format, TableKind};
use smirnov_core::lattice::Tail;
use smirnov_core::oracle::DEFAULT_BUDGET;

#[derive(Debug, Parser)]
#[command(
    name = "smirnov",
    version,
    about = "Exact Smirnov two-sample test and its dominance refinements"
)]
struct Cli {
    /// Output encoding
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,

    /// Significant digits for rendered decimals
    #[arg(long, global = true, default_value_t = 3)]
    digits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TailArg {
    Upper,
    Lower,
    Twosided,
}

impl From<TailArg> for Tail {
    fn from(t: TailArg) -> Tail {
        match t {
            TailArg::Upper => Tail::Upper,
            TailArg::Lower => Tail::Lower,
            TailArg::Twosided => Tail::TwoSided,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the test on two sample files (one decimal per line, '#' comments)
    Test {
        /// First sample (size m, east steps)
        #[arg(long)]
        x: PathBuf,
        /// Second sample (size n, north steps)
        #[arg(long)]
        y: PathBuf,
        /// Direction of the deviation; levels and tails refer to upper
        #[arg(long, value_enum, default_value = "upper")]
        tail: TailArg,
    },
    /// List the natural significance levels and tail probabilities
    Levels { m: usize, n: usize },
    /// Grid of level counts for 3..=max-m by 3..=max-n
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long, default_value_t = 10)]
        max_m: usize,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Count dominance refinements and list some of them
    Refine {
        m: usize,
        n: usize,
        /// Only refinements that cannot be refined further
        #[arg(long)]
        saturated: bool,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Cross-check closed forms against brute force
    Verify {
        m: usize,
        n: usize,
        /// Largest number of paths the brute-force checks may enumerate
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let digits = cli.digits.max(1);
    let result = match cli.command {
        Command::Test { x, y, tail } => smirnov_cli::cmd_test(&x, &y, tail.into(), digits),
        Command::Levels { m, n } => smirnov_cli::cmd_levels(m, n, digits),
        Command::Table { kind, max_m, max_n } => smirnov_cli::cmd_table(kind, max_m, max_n),
        Command::Refine {
            m,
            n,
            saturated,
            limit,
        } => smirnov_cli::cmd_refine(m, n, saturated, limit),
        Command::Verify { m, n, budget } => smirnov_cli::cmd_verify(m, n, budget),
    };
    match result {
        Ok(doc) => {
            print!("{}", doc.render(cli.format));
            ExitCode::from(doc.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

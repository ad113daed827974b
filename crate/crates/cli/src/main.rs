//! `graphprod`: exact graded invariants of graph products from a JSON spec.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use graphprod_core::{PresentationError, ProductError, RankError};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "graphprod", version)]
#[command(about = "Poincaré series, gocha series and filtration ranks of graph products of groups")]
struct Cli {
    /// Print machine-readable JSON instead of tables
    #[arg(long, global = true)]
    json: bool,

    /// Also write the per-degree rank table as CSV
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,

    /// Override the truncation order N from the spec file
    #[arg(long, global = true, value_name = "N")]
    truncation: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the complete subgraphs, grouped by size
    Cliques { file: PathBuf },
    /// Cohomology Poincaré series of the graph product
    Poincare { file: PathBuf },
    /// Gocha series, with its denominator when that is a polynomial
    Gocha { file: PathBuf },
    /// Ranks of the lower central series and Zassenhaus quotients
    Ranks {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Ring::Both)]
        ring: Ring,
    },
    /// Relation counts of the presentation and of its Koszul dual
    Dual { file: PathBuf },
    /// Graded dimensions from the presentation, next to the clique formula
    Oracle {
        file: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
    /// Check every identity and compare against the oracle within the cap
    Verify {
        file: PathBuf,
        /// Highest oracle degree; defaults to the truncation order
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Run the built-in three-surface example and check its known values
    PaperExample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Ring {
    Zp,
    Fp,
    Both,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("vertex {vertex} ({kind}) has no presentation; give it a witness")]
    NotPresentable { vertex: usize, kind: &'static str },
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Rank(#[from] RankError),
    #[error("cannot write {path}: {reason}")]
    Output { path: String, reason: String },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Product(ProductError::Presentation(PresentationError::Capped { .. })) => 3,
            _ => 1,
        }
    }
}

/// Outcome classes, each with its own exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    Capped,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Self::Ok => 0,
            Self::Failed => 2,
            Self::Capped => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok((report, status)) => {
            print!("{}", report.render(cli.json));
            ExitCode::from(status.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

//! `etale`: fusion rings, modular data, étale algebras and condensation from the command line.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use etale::condensation::DEFAULT_BUDGET;
use etale::exactnum::PRECISION_ENV;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "etale", version, about = "Connected étale algebras in multiplicity-free modular fusion categories")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Interval refinement cap in bits.
    #[arg(long, env = PRECISION_ENV, global = true)]
    precision_cap: Option<u32>,
    /// Node budget for NIM-rep and module-fusion searches.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bundled fusion rings.
    Rings {
        #[command(subcommand)]
        action: RingsAction,
    },
    /// Modular fusion categories over a ring.
    Mfcs {
        #[command(subcommand)]
        action: MfcsAction,
    },
    /// Real characters (quantum-dimension candidates).
    Characters { ring: String },
    /// Conformal dimensions compatible with a character.
    Conformal {
        ring: String,
        /// 1-based character index.
        #[arg(long)]
        character: usize,
        #[arg(long)]
        denom_bound: Option<u32>,
    },
    /// Étale algebra classification.
    Classify {
        ring: String,
        #[command(flatten)]
        md: MdChoice,
        /// Compare the merged table with the bundled reference.
        #[arg(long)]
        check: bool,
    },
    /// Condense an étale algebra.
    Condense {
        ring: String,
        #[arg(long)]
        algebra: String,
        /// 1-based modular data index.
        #[arg(long, default_value_t = 1)]
        md: usize,
    },
    /// NIM-reps compatible with an algebra.
    Nimrep {
        ring: String,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Ground-state degeneracy and symmetry breaking.
    Gsd {
        ring: String,
        #[arg(long)]
        algebra: String,
    },
    /// Match quantum and conformal dimensions against the catalogue.
    Match {
        #[arg(long)]
        dims: std::path::PathBuf,
        #[arg(long)]
        h: std::path::PathBuf,
    },
    /// Overview of all bundled rings.
    Summary {
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand, Debug)]
enum RingsAction {
    List,
    Show { ring: String },
    Export {
        ring: String,
        /// Write to a file instead of stdout.
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum MfcsAction {
    Count {
        ring: String,
        #[arg(long)]
        denom_bound: Option<u32>,
    },
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct MdChoice {
    /// 1-based modular data index.
    #[arg(long)]
    md: Option<usize>,
    /// Every listed modular datum.
    #[arg(long)]
    all: bool,
}

/// Failure modes and their exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Mismatch,
    Internal(String),
}

impl From<etale::Error> for Failure {
    fn from(e: etale::Error) -> Self {
        use etale::Error::*;
        match e {
            UnknownRing(_) | Parse(_) | Invalid(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.precision_cap {
        if cap < 16 {
            eprintln!("error: precision cap must be at least 16 bits");
            return ExitCode::from(2);
        }
        std::env::set_var(PRECISION_ENV, cap.to_string());
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

//! `sievekit`: batch front-end for the sieve, exponent and Euler-product
//! experiments.
//!
//! Exit status is 0 on success, 2 on a usage or domain error and 3 when a
//! work budget would be exceeded. Diagnostics are a single line on stderr.

mod commands;
mod config;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sievekit::exponent::ExponentError;
use sievekit::instances::EmptyRange;
use sievekit::maximal::MaximalError;
use sievekit::sieve::SieveError;

use commands::{
    BalanceArgs, BoundArgs, EulerArgs, PredictArgs, ScanArgs, SquarefreeArgs, WeightsArgs,
};
use render::Format;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Budget(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<SieveError> for Failure {
    fn from(e: SieveError) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<MaximalError> for Failure {
    fn from(e: MaximalError) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<ExponentError> for Failure {
    fn from(e: ExponentError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<EmptyRange> for Failure {
    fn from(e: EmptyRange) -> Self {
        Failure::Usage(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "sievekit",
    version,
    about = "Selberg sieve, exponent balancing and Euler-product experiments"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format (each subcommand has its own default).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for enumeration.
    #[arg(long, global = true, value_parser = commands::parse_count)]
    threads: Option<u64>,
    /// Enumeration budget.
    #[arg(long, global = true, value_parser = commands::parse_count)]
    budget: Option<u64>,
    /// Flat key = value file of default flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Selberg weights lambda_d as a table.
    #[command(args_override_self = true)]
    Weights(WeightsArgs),
    /// Selberg upper bound for a residue or quintic instance, exact or modelled.
    #[command(args_override_self = true)]
    Bound(BoundArgs),
    /// Minimise the largest of several power terms.
    #[command(args_override_self = true)]
    Balance(BalanceArgs),
    /// Factorisation types, degenerate count and Selberg bounds on a box of quintics.
    #[command(name = "quintic-scan", args_override_self = true)]
    QuinticScan(ScanArgs),
    /// Truncated inclusion-exclusion for squarefree integers.
    #[command(args_override_self = true)]
    Squarefree(SquarefreeArgs),
    /// Rigorous Euler product or zeta enclosure.
    #[command(args_override_self = true)]
    Euler(EulerArgs),
    /// Predicted count d_i prod_p (1 + p^-2 - p^-4 - p^-5) X.
    #[command(args_override_self = true)]
    Predict(PredictArgs),
}

const SUBCOMMANDS: [&str; 7] = [
    "weights",
    "bound",
    "balance",
    "quintic-scan",
    "squarefree",
    "euler",
    "predict",
];

fn run(cli: Cli) -> Result<(), Failure> {
    let c = &cli.common;
    if let Some(n) = c.threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot start thread pool: {e}")))?;
    }
    let (rendered, default_format) = match &cli.command {
        Command::Weights(a) => (commands::weights(a, c.budget)?, Format::Csv),
        Command::Bound(a) => (commands::bound(a, c.budget)?, Format::Json),
        Command::Balance(a) => (commands::balance_cmd(a)?, Format::Json),
        Command::QuinticScan(a) => (commands::quintic_scan(a, c.budget)?, Format::Csv),
        Command::Squarefree(a) => (commands::squarefree(a, c.budget)?, Format::Csv),
        Command::Euler(a) => (commands::euler(a)?, Format::Json),
        Command::Predict(a) => (commands::predict(a)?, Format::Json),
    };
    render::emit(
        &rendered.text(c.format.unwrap_or(default_format)),
        c.out.as_ref(),
    )
}

fn fail(f: &Failure) -> ExitCode {
    eprintln!("error: {}", f.message().lines().next().unwrap_or_default());
    ExitCode::from(f.exit_code())
}

fn main() -> ExitCode {
    let args = match config::expand(std::env::args().collect(), &SUBCOMMANDS) {
        Ok(a) => a,
        Err(f) => return fail(&f),
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let line = text
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ");
            return fail(&Failure::Usage(line.to_string()));
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => fail(&f),
    }
}

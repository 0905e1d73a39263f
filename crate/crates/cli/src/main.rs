//! `lmov`: colored HOMFLY invariants of braid closures and LMOV integrality
//! checks.
//!
//! Exit codes: 0 when every check passes, 2 when a check fails, 1 on usage or
//! I/O errors.

mod cache;
mod commands;
mod config;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use commands::Verdict;
use config::JobArgs;

#[derive(Parser)]
#[command(name = "lmov", version, about = "Colored HOMFLY invariants and LMOV integrality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Colored invariants W_A of one link as JSON.
    Invariant(JobArgs),
    /// The generating series Z in the Schur and power-sum bases, with log Z.
    PartitionFunction(JobArgs),
    /// LMOV invariants as CSV plus the full check report.
    Lmov(JobArgs),
    /// Regression links must pass and scripted mutations must fail.
    Selftest(JobArgs),
    /// Timings for the regression set or one link.
    Bench(JobArgs),
}

fn run(cli: Cli) -> anyhow::Result<Verdict> {
    let (args, f): (&JobArgs, fn(&config::JobConfig) -> anyhow::Result<Verdict>) = match &cli.command {
        Command::Invariant(a) => (a, commands::invariant),
        Command::PartitionFunction(a) => (a, commands::partition_function),
        Command::Lmov(a) => (a, commands::lmov),
        Command::Selftest(a) => (a, commands::selftest),
        Command::Bench(a) => (a, commands::bench),
    };
    let cfg = args.resolve()?;
    rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build_global()?;
    f(&cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::ChecksFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

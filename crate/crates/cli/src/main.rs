// SPDX-License-Identifier: Apache-2.0

//! `gridpeel`: exact grid peeling of parabolas from the command line.
//!
//! Exit status: 0 on success, 1 on a violated precondition or invariant,
//! 2 on malformed arguments, 3 when no cycle is found within the budget.

mod nt;
mod output;
mod peel;
mod sweep;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::output::Failure;

#[derive(Parser, Debug)]
#[command(name = "gridpeel", version, about = "Exact grid peeling of parabolas")]
struct Cli {
    /// Worker threads for sweeps and tables.
    #[arg(long, global = true, env = "GRIDPEEL_WORKERS", value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,

    /// Add the generation time to JSON output (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    timestamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number-theoretic quantities.
    Nt {
        #[command(subcommand)]
        cmd: nt::NtCommand,
    },
    /// The grid parabola P_t as chain JSON, or its difference profile as CSV.
    Parabola(peel::ParabolaArgs),
    /// Peel a parabola or a grid parabola.
    Peel(peel::PeelArgs),
    /// Speed sweep over A and B with bounded denominators.
    Sweep(sweep::SweepArgs),
    /// Speeds at the critical curvature 1/(2 H_t) against B.
    Critical(sweep::CriticalArgs),
    /// Tube thickness sweep.
    Tube(sweep::SweepArgs),
    /// Run a bundled check suite.
    Verify(verify::VerifyArgs),
    /// Distance between peeled chains and the translated parabola on refined grids.
    Converge(sweep::ConvergeArgs),
}

pub struct Context {
    pub timestamp: bool,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let ctx = Context { timestamp: cli.timestamp };
    let workers = cli
        .workers
        .map(|w| w as usize)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    gridpeel::parallel::with_workers(workers, move || match cli.command {
        Command::Nt { cmd } => nt::run(cmd),
        Command::Parabola(a) => peel::run_parabola(a),
        Command::Peel(a) => peel::run_peel(a, &ctx),
        Command::Sweep(a) => sweep::run_sweep(a),
        Command::Critical(a) => sweep::run_critical(a),
        Command::Tube(a) => sweep::run_tube(a),
        Command::Verify(a) => verify::run(a),
        Command::Converge(a) => sweep::run_converge(a),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("gridpeel: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::Args;
use gridpeel::experiments::{critical_profile, speed_sweep, to_csv_string, tube_sweep, unit_fractions, SweepRow};
use gridpeel::peeler::{converge_check, DEFAULT_STEP_BUDGET};
use gridpeel::{Execution, Fraction};

use crate::output::{emit, float, Failure};

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// A runs over reduced fractions in (0, 1) with denominator up to this.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    a_den_max: u64,
    /// B runs over reduced fractions in [0, 1) with denominator up to this.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    b_den_max: u64,
    /// Peel budget per cell (default 10 t H).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_steps: Option<u64>,
    /// Run cells one after another.
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn exec(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn a_values(den_max: u64) -> Vec<Fraction> {
    unit_fractions(den_max).into_iter().filter(|a| a.is_positive()).collect()
}

fn write_rows(rows: &[SweepRow], out: Option<&std::path::Path>) -> Result<(), Failure> {
    emit(out, &to_csv_string(rows))
}

pub fn run_sweep(a: SweepArgs) -> Result<(), Failure> {
    let rows = speed_sweep(
        &a_values(a.a_den_max),
        &unit_fractions(a.b_den_max),
        a.max_steps.map(|m| m as usize),
        exec(a.sequential),
    )?;
    write_rows(&rows, a.out.as_deref())
}

pub fn run_tube(a: SweepArgs) -> Result<(), Failure> {
    let rows = tube_sweep(
        &a_values(a.a_den_max),
        &unit_fractions(a.b_den_max),
        a.max_steps.map(|m| m as usize),
        exec(a.sequential),
    )?;
    write_rows(&rows, a.out.as_deref())
}

#[derive(Args, Debug)]
pub struct CriticalArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    t: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    b_den_max: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_steps: Option<u64>,
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run_critical(a: CriticalArgs) -> Result<(), Failure> {
    let rows = critical_profile(a.t, a.b_den_max, a.max_steps.map(|m| m as usize), exec(a.sequential))?;
    write_rows(&rows, a.out.as_deref())
}

#[derive(Args, Debug)]
pub struct ConvergeArgs {
    /// Curvature of y = A x^2 / 2.
    #[arg(long = "A", value_name = "p/q", allow_hyphen_values = true)]
    a: Fraction,
    /// Flow time.
    #[arg(long = "T", value_name = "p/q", allow_hyphen_values = true)]
    t: Fraction,
    /// Grid refinements, comma separated.
    #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(1..))]
    n: Vec<u64>,
    /// Refuse runs needing more peels than this.
    #[arg(long, default_value_t = DEFAULT_STEP_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    step_budget: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run_converge(a: ConvergeArgs) -> Result<(), Failure> {
    let mut s = String::from("n,steps,H,inf,sup,distance\n");
    for &n in &a.n {
        let r = converge_check(a.a, a.t, n, a.step_budget)?;
        s.push_str(&format!("{},{},{},{},{},{}\n", r.n, r.steps, r.h, r.inf, r.sup, float(r.distance)));
    }
    emit(a.out.as_deref(), &s)
}

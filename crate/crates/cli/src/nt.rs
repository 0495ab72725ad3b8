// SPDX-License-Identifier: Apache-2.0

use clap::Subcommand;
use gridpeel::numtheory::{self, constants, u_t_alpha, HtTables};
use gridpeel::{Execution, Fraction};

use crate::output::{emit, Failure};

#[derive(Subcommand, Debug)]
pub enum NtCommand {
    /// H_t.
    Ht { t: u64 },
    /// t,H_t for t = 1..=tmax, all four formulas cross-checked.
    HtTable { tmax: usize },
    /// U_t^alpha as (x, y).
    UAlpha { t: u64, alpha: Fraction },
    /// R^alpha(u) as (x, y).
    RAlpha { u: Fraction, alpha: Fraction },
    /// The grid-peeling constant (pi^2 / (2 zeta(3)))^(1/3).
    Cg,
}

pub fn run(cmd: NtCommand) -> Result<(), Failure> {
    let out = match cmd {
        NtCommand::Ht { t } => {
            if t == 0 {
                return Err(Failure::precondition("t must be positive"));
            }
            format!("{}\n", numtheory::ht_definition(t))
        }
        NtCommand::HtTable { tmax } => {
            let tab = HtTables::compute(tmax, Execution::Parallel);
            if let Some(t) = tab.first_disagreement() {
                return Err(Failure::precondition(format!("H_t formulas disagree at t = {t}")));
            }
            let mut s = String::from("t,H_t\n");
            for (i, h) in tab.definition.iter().enumerate() {
                s.push_str(&format!("{},{}\n", i + 1, h));
            }
            s
        }
        NtCommand::UAlpha { t, alpha } => format!("{}\n", u_t_alpha(t, alpha)?),
        NtCommand::RAlpha { u, alpha } => format!("{}\n", numtheory::r_alpha_moebius(u, alpha)?),
        NtCommand::Cg => format!("{}\n", constants::to_decimal(&constants::constants().cg, 14)),
    };
    emit(None, &out)
}

// SPDX-License-Identifier: Apache-2.0

use clap::{Args, ValueEnum};
use gridpeel::gridparabola::build_grid_parabola;
use gridpeel::numtheory::{u_t_alpha, HtTables};
use gridpeel::parallel::map;
use gridpeel::peeler::{
    check_grid_parabola, compare_with_oracle, horizontal_period, left_endpoint_coverage, run_until_cycle,
};
use gridpeel::{Execution, Fraction, RationalParabola};

use crate::output::{emit, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
// names are part of the command-line interface
pub enum Suite {
    Theorem2,
    Lemma4,
    HtIdentities,
    Prop6,
    Oracle,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Largest t (or denominator, for the period suite) to check; each suite has its own default.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    tmax: Option<u64>,
    /// Width of the oracle window in periods.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(i64).range(3..))]
    periods: i64,
    /// Peels compared against the oracle.
    #[arg(long, default_value_t = 20)]
    oracle_steps: usize,
}

type Outcome = Result<String, String>;

fn grid_periods(tmax: u64) -> Outcome {
    let results = map(Execution::Parallel, (1..=tmax).collect(), |t| (t, run_until_cycle(&build_grid_parabola(t), 2 * t as usize + 2)));
    for (t, r) in results {
        let r = r.map_err(|e| format!("t = {t}: {e}"))?;
        let dm = if t % 2 == 1 { t } else { t + 1 } as usize;
        if (r.preperiod, r.delta_m, r.delta_y) != (0, dm, 1) {
            return Err(format!("t = {t}: preperiod {}, delta_m {}, delta_y {}", r.preperiod, r.delta_m, r.delta_y));
        }
    }
    Ok(format!("t = 1..={tmax}"))
}

fn strip_invariants(tmax: u64) -> Outcome {
    let results = map(Execution::Parallel, (1..=tmax).collect(), |t| {
        (t, check_grid_parabola(t).map(|_| ()).and_then(|_| left_endpoint_coverage(t)))
    });
    for (t, r) in results {
        match r {
            Ok(true) => {}
            Ok(false) => return Err(format!("t = {t}: left endpoints do not cover every offset")),
            Err(e) => return Err(format!("t = {t}: {e}")),
        }
    }
    Ok(format!("t = 1..={tmax}"))
}

fn ht_identities(tmax: u64) -> Outcome {
    let tab = HtTables::compute(tmax as usize, Execution::Parallel);
    if let Some(t) = tab.first_disagreement() {
        return Err(format!("formulas disagree at t = {t}"));
    }
    for t in 1..=tmax.min(500) {
        let u = u_t_alpha(t, Fraction::ONE).map_err(|e| e.to_string())?;
        if u.x != tab.definition[t as usize - 1] as i128 {
            return Err(format!("U_t^1 x-component differs from H_t at t = {t}"));
        }
    }
    Ok(format!("t = 1..={tmax}"))
}

/// Smallest H with 2AH and AH^2 + BH integral, by search.
fn brute_period(p: &RationalParabola) -> i64 {
    (1i64..)
        .find(|&h| {
            let hf = Fraction::from(h);
            (p.a * hf * 2).is_integer() && (p.a * hf * hf + p.b * hf).is_integer()
        })
        .expect("period exists")
}

fn horizontal_periods(den_max: u64) -> Outcome {
    let den_max = den_max as i128;
    let mut checked = 0;
    for ad in 1..=den_max {
        for an in [1, 3, 7] {
            for bd in 1..=12 {
                for bn in [-5, 0, 1, 2] {
                    let p = RationalParabola::new(Fraction::new(an, ad), Fraction::new(bn, bd), Fraction::ZERO)
                        .map_err(|e| e.to_string())?;
                    let m = horizontal_period(&p).map_err(|e| e.to_string())?;
                    if m.h != brute_period(&p) || !p.is_invariant_under(&m) {
                        return Err(format!("A = {}, B = {}: H = {}", p.a, p.b, m.h));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} parabolas"))
}

fn oracle(periods: i64, steps: usize) -> Outcome {
    let mut failed = Vec::new();
    for t in [2, 3, 5, 8] {
        let r = compare_with_oracle(&build_grid_parabola(t), periods, steps).map_err(|e| e.to_string())?;
        if let Some(m) = r.first_mismatch {
            failed.push(format!("t = {t} from step {m}"));
        }
    }
    if failed.is_empty() {
        Ok(format!("t in {{2, 3, 5, 8}}, {periods} periods, {steps} steps"))
    } else {
        Err(format!("{periods}-period window disagrees: {}", failed.join(", ")))
    }
}

pub fn run(a: VerifyArgs) -> Result<(), Failure> {
    let suites = match a.suite {
        Suite::All => vec![Suite::Theorem2, Suite::Lemma4, Suite::HtIdentities, Suite::Prop6, Suite::Oracle],
        s => vec![s],
    };
    let mut report = String::new();
    let mut failures = Vec::new();
    for s in suites {
        let (name, outcome) = match s {
            Suite::Theorem2 => ("theorem2", grid_periods(a.tmax.unwrap_or(40))),
            Suite::Lemma4 => ("lemma4", strip_invariants(a.tmax.unwrap_or(25))),
            Suite::HtIdentities => ("ht-identities", ht_identities(a.tmax.unwrap_or(1000))),
            Suite::Prop6 => ("prop6", horizontal_periods(a.tmax.unwrap_or(60))),
            Suite::Oracle => ("oracle", oracle(a.periods, a.oracle_steps)),
            Suite::All => unreachable!(),
        };
        match outcome {
            Ok(detail) => report.push_str(&format!("pass {name}: {detail}\n")),
            Err(detail) => {
                report.push_str(&format!("FAIL {name}: {detail}\n"));
                failures.push(name);
            }
        }
    }
    emit(None, &report)?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::precondition(format!("failed suites: {}", failures.join(", "))))
    }
}

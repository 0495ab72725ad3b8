// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use gridpeel::experiments::default_max_steps;
use gridpeel::geometry::vertical_distance;
use gridpeel::gridparabola::{build_grid_parabola, difference_profile, reference_parabola};
use gridpeel::peeler::{
    check_predict_invariants, compare_with_oracle, initial_chain, peel_trace, run_cycle, CycleReport,
};
use gridpeel::{Error, Fraction, LatticeChain, RationalParabola};
use serde_json::{json, Value};

use crate::output::{emit, float, unix_time, Failure};
use crate::Context;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct ParabolaArgs {
    /// Which grid parabola.
    t: u64,
    #[arg(long, value_enum, default_value = "json")]
    emit: Emit,
    /// Profile samples over [0, H_t/2] for CSV output.
    #[arg(long, default_value_t = 101)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run_parabola(a: ParabolaArgs) -> Result<(), Failure> {
    if a.t == 0 {
        return Err(Failure::precondition("t must be positive"));
    }
    let body = match a.emit {
        Emit::Json => format!("{}\n", build_grid_parabola(a.t).to_json_string()),
        Emit::Csv => {
            let mut s = String::from("x_num,x_den,d_num,d_den,d_float\n");
            for p in difference_profile(a.t, a.samples)? {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    p.x.numer(),
                    p.x.denom(),
                    p.d.numer(),
                    p.d.denom(),
                    float(p.d.to_f64())
                ));
            }
            s
        }
    };
    emit(a.out.as_deref(), &body)
}

#[derive(Args, Debug)]
pub struct PeelArgs {
    /// Coefficient of x^2.
    #[arg(long = "A", value_name = "p/q", allow_hyphen_values = true, conflicts_with = "grid_parabola", required_unless_present = "grid_parabola")]
    a: Option<Fraction>,
    /// Coefficient of x.
    #[arg(long = "B", value_name = "p/q", allow_hyphen_values = true, requires = "a")]
    b: Option<Fraction>,
    /// Constant term.
    #[arg(long = "C", value_name = "p/q", allow_hyphen_values = true, requires = "a")]
    c: Option<Fraction>,
    /// Start from the grid parabola P_t instead.
    #[arg(long, value_name = "t")]
    grid_parabola: Option<u64>,
    /// Number of peels.
    #[arg(long, conflicts_with = "until_cycle", required_unless_present = "until_cycle")]
    steps: Option<usize>,
    /// Peel until the chain repeats up to translation.
    #[arg(long)]
    until_cycle: bool,
    /// Peel budget for --until-cycle (default 10 t H).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_steps: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    emit: Emit,
    /// Check the slope-strip properties on every step (grid parabolas only).
    #[arg(long, requires = "grid_parabola")]
    check_invariants: bool,
    /// Compare with brute-force peeling of a window this many periods wide.
    #[arg(long, value_name = "W")]
    oracle_window: Option<i64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Start {
    chain: LatticeChain,
    reference: RationalParabola,
    source: Value,
    t: Option<u64>,
}

fn start(a: &PeelArgs) -> Result<Start, Failure> {
    if let Some(t) = a.grid_parabola {
        if t == 0 {
            return Err(Failure::precondition("t must be positive"));
        }
        let chain = build_grid_parabola(t);
        let reference = reference_parabola(t, chain.period().h);
        return Ok(Start { chain, reference, source: json!({"kind": "grid_parabola", "t": t}), t: Some(t) });
    }
    let coeffs = (a.a.expect("clap enforces --A"), a.b.unwrap_or(Fraction::ZERO), a.c.unwrap_or(Fraction::ZERO));
    let reference = RationalParabola::new(coeffs.0, coeffs.1, coeffs.2)?;
    let chain = initial_chain(&reference)?;
    let source = json!({"kind": "parabola", "A": coeffs.0, "B": coeffs.1, "C": coeffs.2});
    Ok(Start { chain, reference, source, t: None })
}

fn trace_csv(trace: &[LatticeChain], reference: &RationalParabola) -> Result<String, Failure> {
    let mut s = String::from("step,delta_y_so_far,vertices_in_domain,min_gap_to_reference\n");
    let base = trace[0].value_at_int(0);
    for (i, c) in trace.iter().enumerate() {
        let gap = vertical_distance(c, reference)?.inf;
        s.push_str(&format!("{},{},{},{}\n", i, c.value_at_int(0) - base, c.vertices().len(), gap));
    }
    Ok(s)
}

pub fn run_peel(a: PeelArgs, ctx: &Context) -> Result<(), Failure> {
    let st = start(&a)?;
    let mut failure: Option<Failure> = None;
    let mut cycle: Option<CycleReport> = None;
    let steps = match (a.steps, a.until_cycle) {
        (Some(n), _) => n,
        (None, _) => {
            let budget = match a.max_steps {
                Some(m) => m as usize,
                None => default_max_steps(st.reference.a, st.chain.period().h)?,
            };
            match run_cycle(&st.chain, budget) {
                Ok(run) => {
                    let n = run.report.preperiod + run.report.delta_m;
                    cycle = Some(run.report);
                    n
                }
                Err(e @ Error::NoCycle { .. }) => {
                    failure = Some(e.into());
                    budget
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    let trace = peel_trace(&st.chain, steps)?;

    let invariants = if a.check_invariants {
        let t = st.t.expect("clap enforces --grid-parabola");
        Some(match check_predict_invariants(&trace, t) {
            Ok(r) => json!({
                "passed": true,
                "steps_checked": r.steps_checked,
                "slopes_checked": r.slopes_checked,
                "jumps": r.ledger.total_jumps(),
            }),
            Err(e) => {
                let v = json!({"passed": false, "violation": e.to_string()});
                failure.get_or_insert(e.into());
                v
            }
        })
    } else {
        None
    };

    let oracle = match a.oracle_window {
        Some(w) if w < 3 => return Err(Failure::precondition("oracle window must span at least 3 periods")),
        Some(w) => {
            let r = compare_with_oracle(&st.chain, w, steps)?;
            if !r.agrees() {
                failure.get_or_insert(Failure::precondition(format!(
                    "periodic peel disagrees with the finite oracle at step {}",
                    r.first_mismatch.expect("mismatch")
                )));
            }
            Some(r)
        }
        None => None,
    };

    let body = match a.emit {
        Emit::Csv => trace_csv(&trace, &st.reference)?,
        Emit::Json => {
            let last = trace.last().expect("non-empty trace");
            let mut doc = json!({
                "source": st.source,
                "steps": steps,
                "cycle": cycle,
                "final_chain": last.to_json(),
                "min_gap_to_reference": vertical_distance(last, &st.reference)?.inf,
            });
            if let Some(inv) = invariants {
                doc["invariants"] = inv;
            }
            if let Some(o) = oracle {
                doc["oracle"] = serde_json::to_value(o).expect("serializable");
            }
            if ctx.timestamp {
                doc["timestamp_unix"] = json!(unix_time());
            }
            format!("{}\n", serde_json::to_string(&doc).expect("serializable"))
        }
    };
    emit(a.out.as_deref(), &body)?;
    match failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

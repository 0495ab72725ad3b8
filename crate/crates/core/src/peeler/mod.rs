// SPDX-License-Identifier: Apache-2.0

//! Peeling dynamics on periodic chains.

mod converge;
mod cycle;
mod initial;
mod invariants;
mod oracle;
mod regime;
mod step;

pub use converge::{converge_check, converge_steps, ConvergeResult, DEFAULT_STEP_BUDGET};
pub use cycle::{run_cycle, run_until_cycle, CycleReport, CycleRun, SubShift};
pub use initial::{horizontal_period, initial_chain};
pub use invariants::{
    check_grid_parabola, check_predict_invariants, contact, left_endpoint_coverage, slope_history, Contact,
    InvariantReport, SlopeLedger, StripEntry,
};
pub use oracle::{compare_with_oracle, finite_peel_oracle, window_points, OracleComparison};
pub use regime::{classify, speed_bounds, Regime};
pub use step::{peel_n, peel_step, peel_trace};

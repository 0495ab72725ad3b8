// SPDX-License-Identifier: Apache-2.0

//! Peeling the points above `y = A x^2 / 2` on a grid of spacing `1/n` for
//! time `T`, compared with the parabola translated up by `T A^(1/3)`.

use serde::{Deserialize, Serialize};

use super::initial::initial_chain;
use super::step::peel_step;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::geometry::{vertical_distance, RationalParabola};
use crate::numtheory::cg;

/// Default cap on the number of peels one check may run.
pub const DEFAULT_STEP_BUDGET: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergeResult {
    pub n: u64,
    pub steps: u64,
    pub h: i64,
    /// Exact inf and sup of `chain - A x^2/2` in grid units.
    pub inf: Fraction,
    pub sup: Fraction,
    /// `sup |chain/n - (A x^2/2 + T A^(1/3))|` in original units.
    pub distance: f64,
}

/// `floor(c_g T n^(4/3))`.
pub fn converge_steps(t_time: Fraction, n: u64) -> u64 {
    (cg() * t_time.to_f64() * (n as f64).powf(4.0 / 3.0)).floor() as u64
}

pub fn converge_check(a: Fraction, t_time: Fraction, n: u64, step_budget: u64) -> Result<ConvergeResult> {
    if !a.is_positive() {
        return Err(Error::Precondition("A must be positive".into()));
    }
    if t_time.is_negative() {
        return Err(Error::Precondition("T must be nonnegative".into()));
    }
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    // In grid units x = x_hat / n the parabola becomes y_hat = (A / 2n) x_hat^2.
    let par = RationalParabola::new(a / Fraction::from(2 * n as i128), Fraction::ZERO, Fraction::ZERO)?;
    let steps = converge_steps(t_time, n);
    if steps > step_budget {
        return Err(Error::StepBudget { steps, budget: step_budget });
    }
    let mut chain = initial_chain(&par)?;
    for _ in 0..steps {
        chain = peel_step(&chain)?;
    }
    let d = vertical_distance(&chain, &par)?;
    let lift = t_time.to_f64() * a.to_f64().cbrt() * n as f64;
    let distance = (d.sup.to_f64() - lift).max(lift - d.inf.to_f64()) / n as f64;
    Ok(ConvergeResult { n, steps, h: chain.period().h, inf: d.inf, sup: d.sup, distance })
}

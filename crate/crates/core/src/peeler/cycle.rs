// SPDX-License-Identifier: Apache-2.0

//! Detection of the eventual periodicity of peeling.
//!
//! Two chains with the same period map are equal up to a vertical
//! translation iff their domain vertices agree after subtracting the height
//! of the first vertex, so that normalised list is the state key.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::step::peel_step;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::geometry::{to_i64, LatticeChain, Point};

/// A shorter recurrence `C_{m+k} = T(C_m) + const` where `T` is the
/// lattice-preserving shear `(x, y) -> (x + x_shift, y + 2A x_shift x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubShift {
    pub steps: usize,
    pub x_shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    pub preperiod: usize,
    pub delta_m: usize,
    pub delta_y: i64,
    pub speed: Fraction,
    pub sub_shift: Option<SubShift>,
}

/// A cycle report together with the chains of one full cycle.
#[derive(Clone, Debug)]
pub struct CycleRun {
    pub report: CycleReport,
    /// `C_preperiod ..= C_{preperiod + delta_m}`.
    pub cycle: Vec<LatticeChain>,
}

pub(crate) fn state_key(chain: &LatticeChain) -> Vec<Point> {
    let y0 = chain.vertices()[0].y;
    chain.vertices().iter().map(|p| Point::new(p.x, p.y - y0)).collect()
}

/// Peels until a chain repeats up to vertical translation. `max_steps`
/// bounds the number of peels.
pub fn run_until_cycle(chain: &LatticeChain, max_steps: usize) -> Result<CycleReport> {
    run_cycle(chain, max_steps).map(|r| r.report)
}

pub fn run_cycle(chain: &LatticeChain, max_steps: usize) -> Result<CycleRun> {
    let mut seen: HashMap<Vec<Point>, usize> = HashMap::new();
    let mut history = vec![chain.clone()];
    seen.insert(state_key(chain), 0);
    for step in 1..=max_steps {
        let next = peel_step(history.last().expect("non-empty"))?;
        let key = state_key(&next);
        history.push(next);
        if let Some(&first) = seen.get(&key) {
            let delta_m = step - first;
            let delta_y = history[step].vertices()[0].y - history[first].vertices()[0].y;
            let cycle = history.split_off(first);
            let sub_shift = find_sub_shift(&cycle);
            let report = CycleReport {
                preperiod: first,
                delta_m,
                delta_y,
                speed: Fraction::new(delta_y as i128, delta_m as i128),
                sub_shift,
            };
            return Ok(CycleRun { report, cycle });
        }
        seen.insert(key, step);
    }
    Err(Error::NoCycle { max_steps })
}

/// The shear `T_delta` applied to a chain, rewrapped into `[0, H)`.
/// Requires `z delta / H` to be an integer.
pub(crate) fn sheared(chain: &LatticeChain, delta: i64) -> LatticeChain {
    let m = chain.period();
    let zd = m.z as i128 * delta as i128 / m.h as i128;
    let pts = chain
        .vertices()
        .iter()
        .map(|p| Point::new(p.x + delta, to_i64(p.y as i128 + zd * p.x as i128)))
        .collect();
    LatticeChain::normalized(pts, *m, chain.lattice_offset()).expect("offset unchanged")
}

/// Shifts `delta` in `(0, H)` for which `T_delta` maps the lattice to itself.
fn admissible_shifts(chain: &LatticeChain) -> Vec<i64> {
    let m = chain.period();
    if m.z == 0 {
        return Vec::new();
    }
    let g = gcd_i64(m.z, m.h);
    let step = m.h / g;
    (1..g).map(|j| j * step).collect()
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smallest proper divisor `k` of the cycle length for which the state `k`
/// steps later is a sheared copy of the current one.
fn find_sub_shift(cycle: &[LatticeChain]) -> Option<SubShift> {
    let delta_m = cycle.len() - 1;
    let start = &cycle[0];
    let h = start.period().h;
    let shifts = admissible_shifts(start);
    for k in (1..delta_m).filter(|k| delta_m % k == 0) {
        let target = state_key(&cycle[k]);
        let mut best: Option<i64> = None;
        for &d in &shifts {
            if state_key(&sheared(start, d)) == target {
                let signed = if 2 * d <= h { d } else { d - h };
                if best.map_or(true, |b| signed.abs() < b.abs()) {
                    best = Some(signed);
                }
            }
        }
        if let Some(x_shift) = best {
            return Some(SubShift { steps: k, x_shift });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridparabola::build_grid_parabola;

    #[test]
    fn grid_parabola_cycles_immediately() {
        for t in 1..=12u64 {
            let r = run_until_cycle(&build_grid_parabola(t), 100).unwrap();
            assert_eq!(r.preperiod, 0);
            assert_eq!(r.delta_m as u64, 2 * (t / 2) + 1);
            assert_eq!(r.delta_y, 1);
        }
    }

    #[test]
    fn budget_is_reported() {
        let p = build_grid_parabola(8);
        assert_eq!(run_until_cycle(&p, 3), Err(Error::NoCycle { max_steps: 3 }));
    }

    #[test]
    fn shear_by_full_period_is_identity() {
        let p = build_grid_parabola(6);
        let h = p.period().h;
        assert_eq!(state_key(&sheared(&p, h)), state_key(&p));
    }
}

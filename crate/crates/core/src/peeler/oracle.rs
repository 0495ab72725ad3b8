// SPDX-License-Identifier: Apache-2.0

//! Brute-force peeling of a finite point set, used to cross-check the
//! periodic peeler on truncated windows.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::step::peel_trace;
use crate::error::Result;
use crate::geometry::{lower_hull, to_i64, LatticeChain, Point};

/// Repeatedly removes the lower-hull vertices of the remaining points.
/// Each returned layer is sorted by `x`. Stops when the set is empty or
/// after `max_layers` layers.
pub fn finite_peel_oracle(points: &[Point], max_layers: Option<usize>) -> Vec<Vec<Point>> {
    let mut rest: Vec<Point> = points.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut layers = Vec::new();
    while !rest.is_empty() && max_layers.map_or(true, |m| layers.len() < m) {
        let layer = lower_hull(&rest).expect("sorted, non-empty").vertices;
        let gone: BTreeSet<Point> = layer.iter().copied().collect();
        rest.retain(|p| !gone.contains(p));
        layers.push(layer);
    }
    layers
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub periods: i64,
    pub steps: usize,
    /// Compared range `[x_lo, x_hi)`.
    pub x_lo: i64,
    pub x_hi: i64,
    /// First step whose interior vertices differ, if any.
    pub first_mismatch: Option<usize>,
}

impl OracleComparison {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// The lattice points of a window `periods` periods wide, from the chain up
/// to `height` units above it.
pub fn window_points(chain: &LatticeChain, periods: i64, height: i64) -> (i64, i64, Vec<Point>) {
    let h = chain.period().h;
    let x_lo = -(periods / 2) * h;
    let x_hi = x_lo + periods * h;
    let mut pts = Vec::new();
    for x in x_lo..x_hi {
        let base = to_i64(chain.value_at_int(x).ceil());
        pts.extend((base..=base + height).map(|y| Point::new(x, y)));
    }
    (x_lo, x_hi, pts)
}

/// Peels `chain` periodically and a window of it by brute force, and
/// compares the vertices of both on the middle third of the window at every
/// step.
pub fn compare_with_oracle(chain: &LatticeChain, periods: i64, steps: usize) -> Result<OracleComparison> {
    let height = steps as i64 + 2;
    let (x_lo, x_hi, pts) = window_points(chain, periods, height);
    let width = x_hi - x_lo;
    let (in_lo, in_hi) = (x_lo + width / 3, x_lo + 2 * width / 3);
    let layers = finite_peel_oracle(&pts, Some(steps + 1));
    let trace = peel_trace(chain, steps)?;
    let first_mismatch = (0..=steps).find(|&m| {
        let oracle: Vec<Point> = layers[m].iter().copied().filter(|p| p.x >= in_lo && p.x < in_hi).collect();
        let periodic = trace[m].vertices_between(in_lo, in_hi - 1);
        oracle != periodic
    });
    Ok(OracleComparison { periods, steps, x_lo: in_lo, x_hi: in_hi, first_mismatch })
}

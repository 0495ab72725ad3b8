// SPDX-License-Identifier: Apache-2.0

//! The grid parabola `P_t` and its reference parabola `y = x^2 / (2 H_t)`.
//!
//! Internally `P_t` is left-anchored: the left endpoint of its horizontal
//! bottom edge is the origin, so every vertex is an integer point. The
//! symmetric reporting frame puts the origin at the centre of that edge,
//! i.e. `x_report = x - t/2`, which is why odd `t` carries a lattice offset
//! of `1/2`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fraction::Fraction;
use crate::geometry::{interpolate, AffinePeriodMap, LatticeChain, Point, RationalParabola};
use crate::numtheory::LatticeVector;

/// The slopes `a/b` in `(0, 1]` with `b <= t`, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeSet {
    pub t: u64,
    pub slopes: Vec<Fraction>,
}

/// For each slope `a/b` of the matching [`SlopeSet`], the longest lattice
/// vector `floor(t/b) (b, a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorSet {
    pub t: u64,
    pub vectors: Vec<LatticeVector>,
}

/// Farey order by an in-order walk of the Stern-Brocot tree between 0/1 and
/// 1/1, pruned at denominator `t`.
pub fn build_slope_set(t: u64) -> SlopeSet {
    assert!(t >= 1, "t must be positive");
    let t = t as i128;
    let mut slopes = Vec::new();
    // Each frame is an interval (left, right) whose mediant is still to be
    // visited; `false` means its left subtree has not been expanded yet.
    let mut stack: Vec<((i128, i128), (i128, i128), bool)> = vec![((0, 1), (1, 1), false)];
    while let Some((l, r, expanded)) = stack.pop() {
        let m = (l.0 + r.0, l.1 + r.1);
        if m.1 > t {
            continue;
        }
        if expanded {
            slopes.push(Fraction::new(m.0, m.1));
            stack.push((m, r, false));
        } else {
            stack.push((l, r, true));
            stack.push((l, m, false));
        }
    }
    slopes.push(Fraction::ONE);
    SlopeSet { t: t as u64, slopes }
}

pub fn build_vector_set(t: u64) -> VectorSet {
    let slopes = build_slope_set(t);
    let vectors = slopes
        .slopes
        .iter()
        .map(|s| {
            let (a, b) = (s.numer(), s.denom());
            (t as i128 / b) * LatticeVector::new(b, a)
        })
        .collect();
    VectorSet { t, vectors }
}

/// `H_t` as the horizontal length of one period of `P_t`.
pub fn horizontal_period_of(t: u64) -> i64 {
    let v = build_vector_set(t);
    // all vectors of slope < 1, plus half of (t, t) and half of (t, 0)
    let below_one: i128 = v.vectors[..v.vectors.len() - 1].iter().map(|v| v.x).sum();
    (below_one + t as i128) as i64
}

/// `P_t` over the fundamental domain `[0, H_t)` in left-anchored coordinates,
/// periodic under `(x, y) -> (x + H_t, y + x + (H_t - t)/2)`.
pub fn build_grid_parabola(t: u64) -> LatticeChain {
    let vectors = build_vector_set(t);
    let mut vertices = vec![Point::new(0, 0)];
    let mut cur = Point::new(t as i64, 0);
    for v in &vectors.vectors[..vectors.vectors.len() - 1] {
        vertices.push(cur);
        cur = Point::new(cur.x + v.x as i64, cur.y + v.y as i64);
    }
    // `cur` is now the left end of the slope-1 edge, the image of the origin.
    let h = cur.x;
    let w = cur.y;
    debug_assert_eq!(2 * w, h - t as i64);
    // For t = 1 the bottom edge already ends at the image of the origin.
    vertices.retain(|p| p.x < h);
    let map = AffinePeriodMap::new(h, 1, w).expect("positive period");
    let offset = if t % 2 == 1 { Fraction::new(1, 2) } else { Fraction::ZERO };
    let chain = LatticeChain::from_domain_vertices(vertices, map, offset);
    debug_assert!(chain.validate().is_ok());
    chain
}

/// `y = x^2 / (2 H_t)` written in the left-anchored frame of `P_t`.
pub fn reference_parabola(t: u64, h: i64) -> RationalParabola {
    let two_h = Fraction::from(2 * h);
    let shift = Fraction::new(t as i128, 2);
    // ((x - t/2)^2) / (2H)
    RationalParabola::new(Fraction::ONE / two_h, -(shift * 2) / two_h, shift * shift / two_h)
        .expect("positive curvature")
}

/// One sample of `P_t(x) - Pi_t(x)` in the symmetric reporting frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProfileSample {
    pub x: Fraction,
    pub d: Fraction,
}

/// `P_t - Pi_t` at `samples` evenly spaced points of `[0, H_t / 2]`
/// (reporting frame), evaluated exactly.
pub fn difference_profile(t: u64, samples: usize) -> Result<Vec<ProfileSample>> {
    let chain = build_grid_parabola(t);
    let h = chain.period().h;
    let par = reference_parabola(t, h);
    let shift = Fraction::new(t as i128, 2);
    let half = Fraction::new(h as i128, 2);
    let n = samples.max(1);
    Ok((0..n)
        .map(|k| {
            let x = if n == 1 { Fraction::ZERO } else { half * Fraction::new(k as i128, (n - 1) as i128) };
            let xi = x + shift;
            ProfileSample { x, d: chain.value_at(xi) - par.eval(xi) }
        })
        .collect())
}

/// `P_t - Pi_t` at an arbitrary reporting-frame abscissa.
pub fn difference_at(chain: &LatticeChain, t: u64, x: Fraction) -> Fraction {
    let par = reference_parabola(t, chain.period().h);
    let xi = x + Fraction::new(t as i128, 2);
    chain.value_at(xi) - par.eval(xi)
}

/// The shear `(x, y) -> (x, x - y)` applied to a vector.
pub fn shear_mirror(v: LatticeVector) -> LatticeVector {
    LatticeVector::new(v.x, v.x - v.y)
}

/// Point `Q`, the midpoint of the slope-1 edge, in the reporting frame.
pub fn reference_point_q(t: u64) -> (Fraction, Fraction) {
    let chain = build_grid_parabola(t);
    let m = chain.period();
    let left = Point::new(m.h, m.w);
    let right = Point::new(m.h + t as i64, m.w + t as i64);
    let mid_x = Fraction::new((left.x + right.x) as i128, 2);
    let y = interpolate(left, right, mid_x);
    (mid_x - Fraction::new(t as i128, 2), y)
}

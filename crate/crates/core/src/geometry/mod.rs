// SPDX-License-Identifier: Apache-2.0

//! Exact lattice geometry: points, lower hulls, periodic convex chains and
//! their grid-preserving period maps, and vertical distances to parabolas.
//!
//! A periodic chain is stored by its vertices inside the fundamental domain
//! `[0, H)`. The rest of the infinite chain is generated by the period map
//! `(x, y) -> (x + H, y + z x + w)`.

mod json;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::Fraction;

pub use json::ChainJson;

/// A point of the working lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `(b - a) x (c - a)`; positive for a left turn.
#[inline]
pub fn cross(a: Point, b: Point, c: Point) -> i128 {
    let (abx, aby) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    let (acx, acy) = ((c.x - a.x) as i128, (c.y - a.y) as i128);
    abx * acy - aby * acx
}

/// Lower hull of a point set, with the input points that lie in the relative
/// interior of a hull edge reported separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    pub vertices: Vec<Point>,
    pub on_edge: Vec<Point>,
}

/// Monotone-chain lower hull. `points` must be non-empty and sorted by `x`
/// then `y`. Only the lowest point of each column can be on the lower hull.
pub fn lower_hull(points: &[Point]) -> Result<Hull> {
    if points.is_empty() {
        return Err(Error::Precondition("lower_hull needs at least one point".into()));
    }
    if points.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition("lower_hull input must be sorted by (x, y)".into()));
    }
    let mut lowest: Vec<Point> = Vec::with_capacity(points.len());
    for &p in points {
        if lowest.last().map_or(true, |q| q.x != p.x) {
            lowest.push(p);
        }
    }
    let vertices = lower_hull_columns(&lowest);

    let mut on_edge = Vec::new();
    let mut e = 0;
    for &p in &lowest {
        while e + 1 < vertices.len() && vertices[e + 1].x < p.x {
            e += 1;
        }
        if e + 1 >= vertices.len() {
            break;
        }
        let (a, b) = (vertices[e], vertices[e + 1]);
        if a.x < p.x && p.x < b.x && cross(a, b, p) == 0 {
            on_edge.push(p);
        }
    }
    Ok(Hull { vertices, on_edge })
}

/// Strictly convex lower hull of points with strictly increasing `x`.
pub(crate) fn lower_hull_columns(points: &[Point]) -> Vec<Point> {
    let mut hull: Vec<Point> = Vec::with_capacity(points.len() / 4 + 2);
    for &p in points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

/// `(x, y) -> (x + h, y + z x + w)`, a unimodular shear composed with a
/// translation. On the working lattice `w` is an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffinePeriodMap {
    pub h: i64,
    pub z: i64,
    pub w: i64,
}

impl AffinePeriodMap {
    pub fn new(h: i64, z: i64, w: i64) -> Result<Self> {
        if h <= 0 {
            return Err(Error::Precondition(format!("horizontal period {h} must be positive")));
        }
        Ok(AffinePeriodMap { h, z, w })
    }

    /// `k`-fold composition; negative `k` applies the inverse.
    pub fn apply(&self, p: Point, k: i64) -> Point {
        // P^k(x, y) = (x + kH, y + kzx + zH k(k-1)/2 + kw)
        let k128 = k as i128;
        let dy = k128 * self.z as i128 * p.x as i128
            + self.z as i128 * self.h as i128 * (k128 * (k128 - 1) / 2)
            + k128 * self.w as i128;
        Point::new(p.x + k * self.h, to_i64(p.y as i128 + dy))
    }

    pub fn w_fraction(&self) -> Fraction {
        Fraction::from(self.w)
    }
}

pub(crate) fn to_i64(v: i128) -> i64 {
    i64::try_from(v).expect("lattice coordinate exceeds i64")
}

/// `k`-fold application of `map` to `p`.
pub fn apply_period(map: &AffinePeriodMap, p: Point, k: i64) -> Point {
    map.apply(p, k)
}

/// `y = A x^2 + B x + C` with `A > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalParabola {
    pub a: Fraction,
    pub b: Fraction,
    pub c: Fraction,
}

impl RationalParabola {
    pub fn new(a: Fraction, b: Fraction, c: Fraction) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::Precondition(format!("x^2 coefficient {a} must be positive")));
        }
        Ok(RationalParabola { a, b, c })
    }

    pub fn eval(&self, x: Fraction) -> Fraction {
        (self.a * x + self.b) * x + self.c
    }

    pub fn eval_int(&self, x: i64) -> Fraction {
        self.eval(Fraction::from(x))
    }

    /// Whether `map` sends this parabola onto itself.
    pub fn is_invariant_under(&self, map: &AffinePeriodMap) -> bool {
        let h = Fraction::from(map.h);
        self.a * h * 2 == Fraction::from(map.z) && self.a * h * h + self.b * h == map.w_fraction()
    }

    pub fn shifted(&self, dc: Fraction) -> Self {
        RationalParabola { c: self.c + dc, ..*self }
    }
}

impl fmt::Display for RationalParabola {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y = {} x^2 + {} x + {}", self.a, self.b, self.c)
    }
}

/// An x-monotone strictly convex lattice chain, periodic under `period`.
///
/// `vertices` lie in `[0, H)` with strictly increasing `x`. A chain with
/// `z = 0` is a straight line; it has no vertices and keeps a single
/// on-line anchor point in `vertices` instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeChain {
    vertices: Vec<Point>,
    period: AffinePeriodMap,
    /// Offset of the working lattice from the reporting frame's integer grid,
    /// `0` or `1/2`.
    lattice_offset: Fraction,
}

impl LatticeChain {
    /// Builds a chain from any set of its vertices: points are wrapped into
    /// the fundamental domain, deduplicated and validated.
    pub fn new(points: Vec<Point>, period: AffinePeriodMap, lattice_offset: Fraction) -> Result<Self> {
        let chain = Self::normalized(points, period, lattice_offset)?;
        chain.validate()?;
        Ok(chain)
    }

    pub(crate) fn normalized(
        points: Vec<Point>,
        period: AffinePeriodMap,
        lattice_offset: Fraction,
    ) -> Result<Self> {
        if lattice_offset != Fraction::ZERO && lattice_offset != Fraction::new(1, 2) {
            return Err(Error::InvalidChain(format!("lattice offset {lattice_offset} is not 0 or 1/2")));
        }
        let mut vertices: Vec<Point> = points
            .into_iter()
            .map(|p| period.apply(p, -p.x.div_euclid(period.h)))
            .collect();
        vertices.sort();
        vertices.dedup();
        Ok(LatticeChain { vertices, period, lattice_offset })
    }

    /// Assembles a chain from vertices already in `[0, H)` in order.
    pub(crate) fn from_domain_vertices(vertices: Vec<Point>, period: AffinePeriodMap, lattice_offset: Fraction) -> Self {
        debug_assert!(vertices.iter().all(|p| (0..period.h).contains(&p.x)));
        LatticeChain { vertices, period, lattice_offset }
    }

    /// Checks the chain invariants: ordered vertices in the domain and strict
    /// convexity across the periodic seam.
    pub fn validate(&self) -> Result<()> {
        let h = self.period.h;
        if self.vertices.is_empty() {
            return Err(Error::InvalidChain("no vertices".into()));
        }
        if self.vertices.iter().any(|p| p.x < 0 || p.x >= h) {
            return Err(Error::InvalidChain("vertex outside the fundamental domain".into()));
        }
        if self.vertices.windows(2).any(|w| w[0].x >= w[1].x) {
            return Err(Error::InvalidChain("x-coordinates not strictly increasing".into()));
        }
        match self.period.z {
            z if z < 0 => Err(Error::InvalidChain("negative shear makes the chain concave".into())),
            0 if self.vertices.len() != 1 => Err(Error::InvalidChain(
                "a straight chain is stored as a single anchor point".into(),
            )),
            0 => Ok(()),
            _ => {
                let seq = self.unrolled(-1, 1);
                match seq.windows(3).position(|w| cross(w[0], w[1], w[2]) <= 0) {
                    Some(i) => Err(Error::InvalidChain(format!("not strictly convex at {}", seq[i + 1]))),
                    None => Ok(()),
                }
            }
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn period(&self) -> &AffinePeriodMap {
        &self.period
    }

    pub fn lattice_offset(&self) -> Fraction {
        self.lattice_offset
    }

    pub fn is_straight(&self) -> bool {
        self.period.z == 0
    }

    /// Vertices of the periods `k_lo..=k_hi`, in order.
    pub fn unrolled(&self, k_lo: i64, k_hi: i64) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.vertices.len() * (k_hi - k_lo + 1).max(0) as usize);
        for k in k_lo..=k_hi {
            out.extend(self.vertices.iter().map(|&p| self.period.apply(p, k)));
        }
        out
    }

    /// Vertices of the infinite chain with `x` in `[x_lo, x_hi]`.
    pub fn vertices_between(&self, x_lo: i64, x_hi: i64) -> Vec<Point> {
        let h = self.period.h;
        let k_lo = x_lo.div_euclid(h);
        let k_hi = x_hi.div_euclid(h);
        self.unrolled(k_lo, k_hi)
            .into_iter()
            .filter(|p| p.x >= x_lo && p.x <= x_hi)
            .collect()
    }

    /// Edges of one period, from each domain vertex to its successor,
    /// including the edge across the seam.
    pub fn edges(&self) -> Vec<(Point, Point)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let next = if i + 1 < n {
                    self.vertices[i + 1]
                } else {
                    self.period.apply(self.vertices[0], 1)
                };
                (self.vertices[i], next)
            })
            .collect()
    }

    /// Exact height of the chain over `x`.
    pub fn value_at(&self, x: Fraction) -> Fraction {
        let h = self.period.h as i128;
        let k = x.floor().div_euclid(h) as i64;
        // Shift x into [0, H), evaluate, then map back.
        let xs = x - Fraction::from_int(k as i128 * h);
        let v = self.value_in_domain(xs);
        // P^k adds k z x' + z H k(k-1)/2 + k w at x = x' + kH.
        let (z, w) = (self.period.z as i128, self.period.w as i128);
        let k = k as i128;
        v + xs * (k * z) + Fraction::from_int(z * h * (k * (k - 1) / 2) + k * w)
    }

    fn value_in_domain(&self, x: Fraction) -> Fraction {
        let idx = self.vertices.partition_point(|p| Fraction::from(p.x) <= x);
        let (a, b) = if idx == 0 {
            (self.period.apply(*self.vertices.last().expect("non-empty"), -1), self.vertices[0])
        } else if idx == self.vertices.len() {
            (self.vertices[idx - 1], self.period.apply(self.vertices[0], 1))
        } else {
            (self.vertices[idx - 1], self.vertices[idx])
        };
        interpolate(a, b, x)
    }

    pub fn value_at_int(&self, x: i64) -> Fraction {
        self.value_at(Fraction::from(x))
    }

    /// The same chain moved up by `dy`.
    pub fn translated_up(&self, dy: i64) -> Self {
        LatticeChain {
            vertices: self.vertices.iter().map(|p| Point::new(p.x, p.y + dy)).collect(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> ChainJson {
        ChainJson::from_chain(self)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("chain json")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: ChainJson = serde_json::from_str(s)?;
        j.to_chain()
    }
}

/// Height at `x` on the line through `a` and `b`.
pub(crate) fn interpolate(a: Point, b: Point, x: Fraction) -> Fraction {
    let dx = (b.x - a.x) as i128;
    let dy = (b.y - a.y) as i128;
    Fraction::from(a.y) + (x - Fraction::from(a.x)) * Fraction::new(dy, dx)
}

/// Signed gap `chain - parabola` over one fundamental domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerticalDistance {
    /// Infimum of `chain(x) - par(x)`: the highest translate of the parabola
    /// lying below the chain is `par + inf`.
    pub inf: Fraction,
    /// Supremum of `chain(x) - par(x)`.
    pub sup: Fraction,
}

impl VerticalDistance {
    pub fn thickness(&self) -> Fraction {
        self.sup - self.inf
    }
}

/// Exact inf and sup of `chain(x) - par(x)`.
///
/// On each edge the difference is concave, so the infimum is attained at a
/// vertex and the supremum either at a vertex or where the parabola's slope
/// equals the edge slope.
pub fn vertical_distance(chain: &LatticeChain, par: &RationalParabola) -> Result<VerticalDistance> {
    if !par.is_invariant_under(chain.period()) {
        return Err(Error::NotInvariant);
    }
    let mut inf: Option<Fraction> = None;
    let mut sup: Option<Fraction> = None;
    let mut push = |d: Fraction, track_inf: bool| {
        if track_inf {
            inf = Some(inf.map_or(d, |m| m.min(d)));
        }
        sup = Some(sup.map_or(d, |m| m.max(d)));
    };
    for (p, q) in chain.edges() {
        let at_p = Fraction::from(p.y) - par.eval_int(p.x);
        push(at_p, true);
        let slope = Fraction::new((q.y - p.y) as i128, (q.x - p.x) as i128);
        let tangent = (slope - par.b) / (par.a * 2);
        if Fraction::from(p.x) < tangent && tangent < Fraction::from(q.x) {
            push(interpolate(p, q, tangent) - par.eval(tangent), false);
        }
    }
    Ok(VerticalDistance { inf: inf.expect("edges"), sup: sup.expect("edges") })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    fn brute_lower_hull(points: &[Point]) -> Vec<Point> {
        // A point is a lower-hull vertex iff some line through it has every
        // other point strictly above, checked against all pairs.
        let mut lowest: Vec<Point> = Vec::new();
        for &p in points {
            if !points.iter().any(|q| q.x == p.x && q.y < p.y) && !lowest.contains(&p) {
                lowest.push(p);
            }
        }
        lowest.sort();
        lowest
            .iter()
            .copied()
            .filter(|&p| {
                // not on or above any segment between two other column minima
                !lowest.iter().any(|&a| {
                    lowest.iter().any(|&b| {
                        a.x < p.x && p.x < b.x && cross(a, b, p) >= 0
                    })
                })
            })
            .collect()
    }

    #[test]
    fn hull_examples() {
        let h = lower_hull(&pts(&[(0, 0), (1, 5), (2, 0)])).unwrap();
        assert_eq!(h.vertices, pts(&[(0, 0), (2, 0)]));
        assert!(h.on_edge.is_empty());

        let h = lower_hull(&pts(&[(0, 0), (1, 0), (2, 0)])).unwrap();
        assert_eq!(h.vertices, pts(&[(0, 0), (2, 0)]));
        assert_eq!(h.on_edge, pts(&[(1, 0)]));

        let h = lower_hull(&pts(&[(0, 2), (1, 0), (2, 2), (3, 1)])).unwrap();
        assert_eq!(h.vertices, pts(&[(0, 2), (1, 0), (3, 1)]));
        assert_eq!(h.vertices, brute_lower_hull(&pts(&[(0, 2), (1, 0), (2, 2), (3, 1)])));
    }

    #[test]
    fn hull_rejects_bad_input() {
        assert!(lower_hull(&[]).is_err());
        assert!(lower_hull(&pts(&[(1, 0), (0, 0)])).is_err());
    }

    #[test]
    fn hull_matches_brute_force_on_random_sets() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=50);
            let mut p: Vec<Point> =
                (0..n).map(|_| Point::new(rng.gen_range(-10..10), rng.gen_range(-10..10))).collect();
            p.sort();
            p.dedup();
            let h = lower_hull(&p).unwrap();
            assert_eq!(h.vertices, brute_lower_hull(&p));
            for w in h.vertices.windows(3) {
                assert!(cross(w[0], w[1], w[2]) > 0);
            }
        }
    }

    #[test]
    fn period_map_examples() {
        let m = AffinePeriodMap::new(1, 1, 1).unwrap();
        assert_eq!(m.apply(Point::new(0, 0), 1), Point::new(1, 1));
        assert_eq!(m.apply(Point::new(3, -2), 0), Point::new(3, -2));
        let m = AffinePeriodMap::new(7, 3, -5).unwrap();
        for k in -4..=4 {
            let p = Point::new(2, 9);
            assert_eq!(m.apply(m.apply(p, k), -k), p);
            let mut q = p;
            for _ in 0..k.max(0) {
                q = m.apply(q, 1);
            }
            if k >= 0 {
                assert_eq!(q, m.apply(p, k));
            }
        }
    }

    fn p1() -> LatticeChain {
        LatticeChain::new(pts(&[(0, 0)]), AffinePeriodMap::new(1, 1, 0).unwrap(), Fraction::new(1, 2)).unwrap()
    }

    #[test]
    fn chain_values_and_unrolling() {
        let c = p1();
        // vertices (k, k(k-1)/2)
        assert_eq!(c.unrolled(0, 3), pts(&[(0, 0), (1, 0), (2, 1), (3, 3)]));
        assert_eq!(c.value_at(Fraction::new(5, 2)), Fraction::from(2i64));
        assert_eq!(c.value_at(Fraction::new(-1, 2)), Fraction::new(1, 2));
        assert_eq!(c.value_at_int(4), Fraction::from(6i64));
    }

    #[test]
    fn chain_normalizes_points_outside_domain() {
        let m = AffinePeriodMap::new(1, 1, 0).unwrap();
        let c = LatticeChain::new(pts(&[(3, 3), (2, 1)]), m, Fraction::ZERO).unwrap();
        assert_eq!(c.vertices(), &pts(&[(0, 0)])[..]);
    }

    #[test]
    fn chain_rejects_non_convex() {
        let m = AffinePeriodMap::new(4, 1, 0).unwrap();
        // (0,0) (2,0) are collinear with the seam edge for this map
        let bad = LatticeChain::new(pts(&[(0, 0), (1, 5)]), m, Fraction::ZERO);
        assert!(bad.is_err());
    }

    #[test]
    fn vertical_distance_touching_translate() {
        // P_1 against y = x^2/2 - x/2, which passes through every vertex.
        let c = p1();
        let par = RationalParabola::new(Fraction::new(1, 2), Fraction::new(-1, 2), Fraction::ZERO).unwrap();
        let d = vertical_distance(&c, &par).unwrap();
        assert_eq!(d.inf, Fraction::ZERO);
        // midpoint of each unit edge: chord minus parabola = A/4
        assert_eq!(d.sup, Fraction::new(1, 8));
    }

    #[test]
    fn vertical_distance_rejects_straight_chain() {
        let line = LatticeChain::new(pts(&[(0, 0)]), AffinePeriodMap::new(1, 0, 0).unwrap(), Fraction::ZERO).unwrap();
        let par = RationalParabola::new(Fraction::new(1, 3), Fraction::ZERO, Fraction::ZERO).unwrap();
        assert_eq!(vertical_distance(&line, &par), Err(Error::NotInvariant));
    }

    #[test]
    fn parabola_rejects_nonpositive_curvature() {
        assert!(RationalParabola::new(Fraction::ZERO, Fraction::ONE, Fraction::ZERO).is_err());
    }
}

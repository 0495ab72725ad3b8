// SPDX-License-Identifier: Apache-2.0

//! One peeling step on a periodic chain.
//!
//! The remaining point set is always "every lattice point on or above the
//! chain, minus the vertices peeled so far", and only the lowest remaining
//! point of each column can become a vertex. That point is `ceil(C(x))`, or
//! `C(x) + 1` when `(x, C(x))` is a vertex, so it lies within one unit above
//! the old chain. The new chain is the lower hull of these column minima.
//!
//! The hull is computed over three periods `[-H, 2H)` and the middle period
//! is kept. Every half-open interval of length `H` contains a vertex of the
//! new chain, so the window hull agrees with the infinite hull on `[0, H)`.

use crate::error::{Error, Result};
use crate::geometry::{lower_hull_columns, to_i64, LatticeChain, Point};

/// Lowest remaining lattice point in every column of `[x_lo, x_hi)`.
pub(crate) fn column_minima(chain: &LatticeChain, x_lo: i64, x_hi: i64) -> Vec<Point> {
    let h = chain.period().h;
    let verts = chain.unrolled(x_lo.div_euclid(h) - 1, (x_hi - 1).div_euclid(h) + 1);
    let mut out = Vec::with_capacity((x_hi - x_lo) as usize);
    let mut e = 0usize;
    for x in x_lo..x_hi {
        while verts[e + 1].x <= x {
            e += 1;
        }
        let a = verts[e];
        let y = if a.x == x {
            a.y + 1
        } else {
            let b = verts[e + 1];
            let num = (b.y - a.y) as i128 * (x - a.x) as i128;
            let den = (b.x - a.x) as i128;
            // ceil(a.y + num/den)
            a.y + to_i64(-((-num).div_euclid(den)))
        };
        out.push(Point::new(x, y));
    }
    out
}

/// Removes the vertices of `chain` and returns the lower hull of what is
/// left. A straight chain has no vertices and is returned unchanged.
pub fn peel_step(chain: &LatticeChain) -> Result<LatticeChain> {
    if chain.is_straight() {
        return Ok(chain.clone());
    }
    let h = chain.period().h;
    let candidates = column_minima(chain, -h, 2 * h);
    let hull = lower_hull_columns(&candidates);
    let vertices: Vec<Point> = hull.into_iter().filter(|p| p.x >= 0 && p.x < h).collect();
    if vertices.is_empty() {
        return Err(Error::PeelFailure("no vertex inside the fundamental domain".into()));
    }
    let next = LatticeChain::from_domain_vertices(vertices, *chain.period(), chain.lattice_offset());
    next.validate().map_err(|e| Error::PeelFailure(format!("seam check failed: {e}")))?;
    Ok(next)
}

/// `steps` consecutive peels, returning every intermediate chain including
/// the start.
pub fn peel_trace(chain: &LatticeChain, steps: usize) -> Result<Vec<LatticeChain>> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(chain.clone());
    for _ in 0..steps {
        let next = peel_step(out.last().expect("non-empty"))?;
        out.push(next);
    }
    Ok(out)
}

/// Applies `steps` peels and returns only the final chain.
pub fn peel_n(chain: &LatticeChain, steps: usize) -> Result<LatticeChain> {
    let mut cur = chain.clone();
    for _ in 0..steps {
        cur = peel_step(&cur)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraction::Fraction;
    use crate::geometry::AffinePeriodMap;
    use crate::gridparabola::build_grid_parabola;

    #[test]
    fn p1_moves_up_by_one() {
        let p1 = build_grid_parabola(1);
        assert_eq!(peel_step(&p1).unwrap(), p1.translated_up(1));
    }

    #[test]
    fn straight_chain_is_fixed() {
        let line = LatticeChain::new(vec![Point::new(0, 3)], AffinePeriodMap::new(1, 0, 0).unwrap(), Fraction::ZERO)
            .unwrap();
        assert_eq!(peel_step(&line).unwrap(), line);
    }

    #[test]
    fn p5_returns_after_five_steps() {
        let p5 = build_grid_parabola(5);
        let after = peel_n(&p5, 5).unwrap();
        assert_eq!(after, p5.translated_up(1));
        for k in 1..5 {
            assert_ne!(peel_n(&p5, k).unwrap().vertices(), p5.translated_up(1).vertices());
        }
    }

    #[test]
    fn column_minima_skip_vertices() {
        let p1 = build_grid_parabola(1);
        let c = column_minima(&p1, 0, 3);
        assert_eq!(c, vec![Point::new(0, 1), Point::new(1, 1), Point::new(2, 2)]);
    }

    #[test]
    fn new_chain_is_above_old_and_within_one() {
        let p = build_grid_parabola(6);
        let q = peel_step(&p).unwrap();
        for v in p.vertices() {
            assert!(q.value_at_int(v.x) > Fraction::from(v.y));
        }
        for x in -10..p.period().h + 10 {
            let (a, b) = (p.value_at_int(x), q.value_at_int(x));
            assert!(b >= a && b <= a + 1, "x = {x}");
        }
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Period maps of rational parabolas and the hull of the points above them.

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::geometry::{lower_hull_columns, to_i64, AffinePeriodMap, LatticeChain, Point, RationalParabola};
use crate::numtheory::lcm;

/// Smallest `H > 0` for which `y = A x^2 + B x + C` is invariant under an
/// integer shear `(x, y) -> (x + H, y + z x + w)`, together with that shear.
///
/// Invariance needs `z = 2AH` and `w = AH^2 + BH` to be integers, which
/// reduces to a congruence on the denominators of `A` and `B`.
pub fn horizontal_period(par: &RationalParabola) -> Result<AffinePeriodMap> {
    if !par.a.is_positive() {
        return Err(Error::Precondition("A must be positive".into()));
    }
    let to_u64 = |v: i128| u64::try_from(v).map_err(|_| Error::Precondition("denominator too large".into()));
    let ad = to_u64(par.a.denom())?;
    let bd = to_u64(par.b.denom())?;
    let h = if ad % 4 == 0 {
        lcm(ad / 2, bd)
    } else if ad % 4 == 2 && bd % 4 == 2 {
        lcm(ad / 2, bd / 2)
    } else {
        lcm(ad, bd)
    };
    let hf = Fraction::from(h as i128);
    let z = par.a * hf * 2;
    let w = par.a * hf * hf + par.b * hf;
    match (z.to_integer(), w.to_integer()) {
        (Some(z), Some(w)) => {
            let fit = |v: i128| i64::try_from(v).map_err(|_| Error::Precondition("period map out of range".into()));
            AffinePeriodMap::new(fit(h as i128)?, fit(z)?, fit(w)?)
        }
        _ => unreachable!("period formula always yields an integral shear"),
    }
}

/// The lower convex hull of the lattice points on or above the parabola,
/// as a periodic chain.
pub fn initial_chain(par: &RationalParabola) -> Result<LatticeChain> {
    let map = horizontal_period(par)?;
    let h = map.h;
    // Shift the parabola into the working lattice once; every column then
    // needs only one ceil.
    let candidates: Vec<Point> = (-h..2 * h).map(|x| Point::new(x, to_i64(par.eval_int(x).ceil()))).collect();
    let vertices: Vec<Point> = lower_hull_columns(&candidates)
        .into_iter()
        .filter(|p| p.x >= 0 && p.x < h)
        .collect();
    let chain = LatticeChain::from_domain_vertices(vertices, map, Fraction::ZERO);
    chain.validate()?;
    Ok(chain)
}

// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use gridpeel::geometry::vertical_distance;
use gridpeel::gridparabola::{
    build_grid_parabola, build_slope_set, build_vector_set, horizontal_period_of, reference_parabola, shear_mirror,
};
use gridpeel::numtheory::{ht_definition, LatticeVector};
use gridpeel::Fraction;

#[test]
fn edge_slopes_are_the_slope_set() {
    for t in 1..=40 {
        let c = build_grid_parabola(t);
        let u = c.unrolled(0, 2);
        let slopes: Vec<Fraction> = u
            .windows(2)
            .map(|w| Fraction::new((w[1].y - w[0].y) as i128, (w[1].x - w[0].x) as i128))
            .filter(|s| s.is_positive() && *s <= Fraction::ONE)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(slopes, build_slope_set(t).slopes, "t = {t}");
    }
}

#[test]
fn vector_lengths_sum_to_the_period() {
    for t in 1..=500 {
        assert_eq!(horizontal_period_of(t) as u128, ht_definition(t), "t = {t}");
    }
}

#[test]
fn shear_permutes_the_vectors() {
    for t in 1..=60 {
        let mut v = build_vector_set(t).vectors;
        v.push(LatticeVector::new(t as i128, 0));
        let set: BTreeSet<(i128, i128)> = v.iter().map(|v| (v.x, v.y)).collect();
        let sheared: BTreeSet<(i128, i128)> = v.iter().map(|&v| shear_mirror(v)).map(|v| (v.x, v.y)).collect();
        assert_eq!(set, sheared, "t = {t}");
    }
}

#[test]
fn offset_from_reference_grows_like_t_squared_log_t() {
    let mut worst = 0.0f64;
    for t in 2..=200u64 {
        let c = build_grid_parabola(t);
        let d = vertical_distance(&c, &reference_parabola(t, c.period().h)).unwrap();
        let f = d.inf.abs().max(d.sup.abs()).to_f64();
        let tf = t as f64;
        worst = worst.max(f / (tf * tf * tf.ln()));
    }
    eprintln!("max f(t) / (t^2 ln t) over t <= 200: {worst}");
    // measured maximum is about 0.045
    assert!(worst < 0.1);
}

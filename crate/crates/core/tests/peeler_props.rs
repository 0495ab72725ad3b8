// SPDX-License-Identifier: Apache-2.0

use gridpeel::experiments::default_max_steps;
use gridpeel::geometry::lower_hull;
use gridpeel::gridparabola::build_grid_parabola;
use gridpeel::peeler::{
    classify, compare_with_oracle, initial_chain, peel_step, run_until_cycle, speed_bounds, CycleReport,
};
use gridpeel::{Fraction, LatticeChain, Point, RationalParabola};
use proptest::prelude::*;

fn fr(n: i128, d: i128) -> Fraction {
    Fraction::new(n, d)
}

fn parabola() -> impl Strategy<Value = RationalParabola> {
    (1i128..=12, 1i128..=10)
        .prop_flat_map(|(ad, bd)| (1..=2 * ad, Just(ad), -bd..=bd, Just(bd)))
        .prop_map(|(an, ad, bn, bd)| RationalParabola::new(fr(an, ad), fr(bn, bd), Fraction::ZERO).unwrap())
}

fn cycle_of(p: &RationalParabola) -> CycleReport {
    let c = initial_chain(p).unwrap();
    run_until_cycle(&c, default_max_steps(p.a, c.period().h).unwrap()).unwrap()
}

/// Lowest lattice points on or above `c`, raised by `bump[x mod H]` and
/// re-hulled: a periodic chain that is pointwise above `c`.
fn perturbed(c: &LatticeChain, bump: &[i64]) -> LatticeChain {
    let m = *c.period();
    let pts: Vec<Point> = (-m.h..2 * m.h)
        .map(|x| {
            let y = c.value_at_int(x).ceil() as i64;
            Point::new(x, y + bump[x.rem_euclid(m.h) as usize % bump.len()])
        })
        .collect();
    let hull = lower_hull(&pts).unwrap();
    let mid: Vec<Point> = hull.vertices.into_iter().filter(|p| (0..m.h).contains(&p.x)).collect();
    LatticeChain::new(mid, m, c.lattice_offset()).unwrap()
}

fn below_everywhere(lo: &LatticeChain, hi: &LatticeChain) -> bool {
    (0..=lo.period().h).all(|x| lo.value_at_int(x) <= hi.value_at_int(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn peeling_is_monotone(p in parabola(), lift in 0i64..3, bump in prop::collection::vec(0i64..3, 1..8)) {
        let c = initial_chain(&p).unwrap();
        let d = perturbed(&c, &bump).translated_up(lift);
        prop_assert!(below_everywhere(&c, &d));
        let (pc, pd) = (peel_step(&c).unwrap(), peel_step(&d).unwrap());
        prop_assert!(below_everywhere(&pc, &pd));
    }

    #[test]
    fn peeling_moves_up(p in parabola(), steps in 0usize..6) {
        let mut c = initial_chain(&p).unwrap();
        for _ in 0..steps {
            c = peel_step(&c).unwrap();
        }
        let next = peel_step(&c).unwrap();
        next.validate().unwrap();
        for v in c.vertices() {
            prop_assert!(next.value_at_int(v.x) > Fraction::from(v.y));
        }
        for x in 0..=c.period().h {
            prop_assert!(next.value_at_int(x) >= c.value_at_int(x));
            prop_assert!(next.value_at_int(x) <= c.value_at_int(x) + Fraction::ONE);
        }
    }

    #[test]
    fn shift_of_b_by_two_a_keeps_the_cycle(p in parabola(), k in -3i128..=3) {
        let q = RationalParabola::new(p.a, p.b + p.a * Fraction::from(2 * k), p.c).unwrap();
        let (r, s) = (cycle_of(&p), cycle_of(&q));
        prop_assert_eq!((r.delta_m, r.delta_y), (s.delta_m, s.delta_y));
    }

    #[test]
    fn vertical_translation_keeps_the_cycle(p in parabola(), cn in -30i128..30, cd in 1i128..=10) {
        let (r, s) = (cycle_of(&p), cycle_of(&p.shifted(fr(cn, cd))));
        prop_assert_eq!((r.delta_m, r.delta_y), (s.delta_m, s.delta_y));
    }

    #[test]
    fn sub_shift_divides_the_cycle(p in parabola()) {
        let c = initial_chain(&p).unwrap();
        let r = cycle_of(&p);
        if let Some(s) = r.sub_shift {
            prop_assert!(s.steps < r.delta_m && r.delta_m % s.steps == 0);
            prop_assert_eq!((s.x_shift as i128 * (r.delta_m / s.steps) as i128) % c.period().h as i128, 0);
        }
    }

    #[test]
    fn speed_lies_in_its_regime(ad in 1i128..=60, an in 1i128..=4, bn in 0i128..6, bd in 1i128..=6) {
        let a = fr(an, ad);
        let p = RationalParabola::new(a, fr(bn, bd), Fraction::ZERO).unwrap();
        let (lo, hi) = speed_bounds(classify(a).unwrap());
        let v = cycle_of(&p).speed;
        prop_assert!(lo <= v && v <= hi, "v = {} outside [{}, {}] for A = {}", v, lo, hi, a);
    }
}

#[test]
fn grid_parabolas_repeat_one_unit_higher() {
    for t in 1..=40u64 {
        let r = run_until_cycle(&build_grid_parabola(t), 2 * t as usize + 2).unwrap();
        let dm = if t % 2 == 1 { t } else { t + 1 } as usize;
        assert_eq!((r.preperiod, r.delta_m, r.delta_y), (0, dm, 1), "t = {t}");
        assert_eq!(r.speed, fr(1, dm as i128));
    }
}

#[test]
fn odd_regime_speed_is_exact() {
    // strictly between 1/(2 H_3) = 1/22 and 1/(2 H_2) = 1/8
    for a in [fr(1, 9), fr(1, 15), fr(1, 21)] {
        let p = RationalParabola::new(a, Fraction::ZERO, Fraction::ZERO).unwrap();
        assert_eq!(cycle_of(&p).speed, fr(1, 3), "A = {a}");
    }
}

#[test]
fn periodic_peel_agrees_with_finite_peeling() {
    // narrow windows erode from the boundary faster for small t
    for t in 1..=8u64 {
        let periods = if t <= 2 { 40 } else { 10 };
        let r = compare_with_oracle(&build_grid_parabola(t), periods, 20).unwrap();
        assert!(r.agrees(), "t = {t}: first mismatch at step {:?}", r.first_mismatch);
    }
    let c = initial_chain(&RationalParabola::new(fr(1, 8), fr(1, 5), Fraction::ZERO).unwrap()).unwrap();
    assert!(compare_with_oracle(&c, 10, 20).unwrap().agrees());
}

// SPDX-License-Identifier: Apache-2.0

use gridpeel::gridparabola::build_grid_parabola;
use gridpeel::peeler::{initial_chain, peel_n};
use gridpeel::{Fraction, LatticeChain, RationalParabola};

#[test]
fn p3_chain_json() {
    // slopes 1/3, 1/2, 2/3 with vectors (3,1), (2,1), (3,2) after a bottom edge of length 3
    let s = build_grid_parabola(3).to_json_string();
    assert_eq!(
        s,
        r#"{"lattice_offset":"1/2","period":{"H":11,"z":1,"w":"4/1"},"vertices":[[0,0],[3,0],[6,1],[8,2]]}"#
    );
    assert_eq!(LatticeChain::from_json_str(&s).unwrap(), build_grid_parabola(3));
}

#[test]
fn worked_example_returns_shifted() {
    let p = RationalParabola::new(Fraction::new(1, 8), Fraction::new(1, 5), Fraction::ZERO).unwrap();
    let c = initial_chain(&p).unwrap();
    let later = peel_n(&c, 15).unwrap();
    // one full cycle: same shape, 6 units higher
    assert_eq!(later, c.translated_up(6));
}

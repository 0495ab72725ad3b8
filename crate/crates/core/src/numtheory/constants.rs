// SPDX-License-Identifier: Apache-2.0

//! Fixed-point values of pi, zeta(3) and the peeling constant
//! `c_g = (pi^2 / (2 zeta(3)))^(1/3)`.
//!
//! Everything is computed once on scaled big integers with guard digits and
//! cached for the life of the process.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};

/// Decimal digits carried after the point, before guard digits are dropped.
pub const DIGITS: u32 = 40;
const GUARD: u32 = 12;

/// Cached fixed-point constants: each value is `round(c * 10^DIGITS)`.
#[derive(Debug, Clone)]
pub struct Constants {
    pub pi: BigInt,
    pub zeta3: BigInt,
    pub cg: BigInt,
    /// `2 zeta(3) / pi^2`, the leading coefficient of `H_t`.
    pub ht_coefficient: BigInt,
}

fn pow10(n: u32) -> BigInt {
    BigInt::from(10u32).pow(n)
}

/// `arctan(1/x) * scale` by its alternating Taylor series. The truncation
/// error per term is below one unit of `scale`.
fn arctan_inv(x: u64, scale: &BigInt) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = scale / &x;
    let mut sum = BigInt::from(0);
    let mut k: u64 = 0;
    while power.sign() != Sign::NoSign {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

fn pi_scaled(scale: &BigInt) -> BigInt {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    16 * arctan_inv(5, scale) - 4 * arctan_inv(239, scale)
}

/// Apery's series `zeta(3) = 5/2 * sum (-1)^(k+1) / (k^3 binom(2k,k))`.
/// Terms shrink by roughly a factor of 4, and the alternating remainder is
/// bounded by the first omitted term.
fn zeta3_scaled(scale: &BigInt) -> BigInt {
    let mut sum = BigInt::from(0);
    let mut binom = BigInt::from(1); // binom(2k, k), updated incrementally
    let mut k: u64 = 1;
    loop {
        // binom(2k,k) = binom(2k-2,k-1) * (2k)(2k-1) / k^2
        binom = binom * BigInt::from(2 * k) * BigInt::from(2 * k - 1) / BigInt::from(k * k);
        let denom = BigInt::from(k) * BigInt::from(k) * BigInt::from(k) * &binom * 2;
        let term: BigInt = scale * 5 / denom;
        if term.sign() == Sign::NoSign {
            break;
        }
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        k += 1;
    }
    sum
}

fn round_drop(v: &BigInt, digits: u32) -> BigInt {
    let d = pow10(digits);
    let half = &d / 2;
    if v.sign() == Sign::Minus {
        let neg: BigInt = -v + &half;
        -(neg / &d)
    } else {
        (v + &half) / &d
    }
}

fn compute() -> Constants {
    let work = DIGITS + GUARD;
    let scale = pow10(work);
    let pi = pi_scaled(&scale);
    let zeta3 = zeta3_scaled(&scale);
    let pi2 = &pi * &pi / &scale;
    // r = pi^2 / (2 zeta3) at `scale`
    let r = &pi2 * &scale / (&zeta3 * 2);
    // cbrt(r * scale^2) = cbrt(r/scale) * scale
    let r2: BigInt = &r * &scale * &scale;
    let radicand = r2.to_biguint().expect("positive");
    let cg = BigInt::from_biguint(Sign::Plus, BigUint::cbrt(&radicand));
    let coeff = &zeta3 * 2 * &scale / &pi2;
    Constants {
        pi: round_drop(&pi, GUARD),
        zeta3: round_drop(&zeta3, GUARD),
        cg: round_drop(&cg, GUARD),
        ht_coefficient: round_drop(&coeff, GUARD),
    }
}

pub fn constants() -> &'static Constants {
    static CELL: OnceLock<Constants> = OnceLock::new();
    CELL.get_or_init(compute)
}

/// Renders a fixed-point constant with `places` digits after the point,
/// rounding half up. `places` must not exceed [`DIGITS`].
pub fn to_decimal(v: &BigInt, places: u32) -> String {
    assert!(places <= DIGITS);
    let r = round_drop(v, DIGITS - places);
    let s = r.magnitude().to_string();
    let places = places as usize;
    let s = format!("{s:0>width$}", width = places + 1);
    let (int, frac) = s.split_at(s.len() - places);
    let sign = if r.sign() == Sign::Minus { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

fn to_f64(v: &BigInt) -> f64 {
    to_decimal(v, 20).parse().expect("decimal")
}

pub fn pi() -> f64 {
    to_f64(&constants().pi)
}

pub fn zeta3() -> f64 {
    to_f64(&constants().zeta3)
}

/// `c_g = (pi^2 / (2 zeta(3)))^(1/3)`.
pub fn cg() -> f64 {
    to_f64(&constants().cg)
}

/// `2 zeta(3) / pi^2`.
pub fn ht_coefficient() -> f64 {
    to_f64(&constants().ht_coefficient)
}

// SPDX-License-Identifier: Apache-2.0

//! Exact number-theoretic quantities behind the grid parabola.
//!
//! The horizontal period `H_t` is available through four independent
//! formulas (primitive-vector definition, totient sum, gcd double sum and
//! divisor sum) so that each can be checked against the others. The vector
//! sums `U_t^alpha`, `T^alpha(u)` and `R^alpha(u)` measure how far the grid
//! parabola travels up to a slope threshold `alpha`.

pub mod constants;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::parallel::{self, Execution};

pub use constants::{cg, ht_coefficient, pi, zeta3};

/// An integer vector `(x, y)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeVector {
    pub x: i128,
    pub y: i128,
}

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector { x: 0, y: 0 };

    pub const fn new(x: i128, y: i128) -> Self {
        LatticeVector { x, y }
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, o: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, o: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.x - o.x, self.y - o.y)
    }
}

impl AddAssign for LatticeVector {
    fn add_assign(&mut self, o: LatticeVector) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Mul<LatticeVector> for i128 {
    type Output = LatticeVector;
    fn mul(self, v: LatticeVector) -> LatticeVector {
        LatticeVector::new(self * v.x, self * v.y)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Euler's totient by trial factorization.
pub fn euler_phi(x: u64) -> Result<u64> {
    if x == 0 {
        return Err(Error::Precondition("euler_phi(0) is undefined".into()));
    }
    let mut n = x;
    let mut phi = x;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    Ok(phi)
}

/// Moebius function by trial factorization.
pub fn moebius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::Precondition("moebius(0) is undefined".into()));
    }
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Totients `phi(0..=n)` by a sieve; `phi(0)` is stored as 0.
pub fn totient_table(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for m in (p..=n).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    phi
}

/// Moebius values `mu(0..=n)` by a linear sieve; `mu(0)` is stored as 0.
pub fn moebius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    if n >= 1 {
        mu[0] = 0;
    } else {
        return vec![0];
    }
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            if i * p > n {
                break;
            }
            composite[i * p] = true;
            if i % p == 0 {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    mu
}

/// `H_t` straight from its definition: the sum over primitive `(x, y)` with
/// `0 < y <= x <= t` of `floor(t/x) * x`.
pub fn ht_definition(t: u64) -> u128 {
    let mut sum = 0u128;
    for x in 1..=t {
        let weight = (t / x * x) as u128;
        for y in 1..=x {
            if gcd(x, y) == 1 {
                sum += weight;
            }
        }
    }
    sum
}

/// `H_t = sum_{x <= t} phi(x) floor(t/x) x`.
pub fn ht_phi(t: u64) -> u128 {
    (1..=t)
        .map(|x| euler_phi(x).expect("x >= 1") as u128 * (t / x * x) as u128)
        .sum()
}

/// `H_t = sum_{1 <= j <= i <= t} i / gcd(i, j)`.
pub fn ht_gcd(t: u64) -> u128 {
    (1..=t).map(psi).sum()
}

fn psi(i: u64) -> u128 {
    (1..=i).map(|j| (i / gcd(i, j)) as u128).sum()
}

/// `H_t = sum_{i <= t} sum_{d | i} d phi(d)`.
pub fn ht_divisor(t: u64) -> u128 {
    let mut sum = 0u128;
    for i in 1..=t {
        let mut d = 1;
        while d * d <= i {
            if i % d == 0 {
                sum += d as u128 * euler_phi(d).expect("d >= 1") as u128;
                let e = i / d;
                if e != d {
                    sum += e as u128 * euler_phi(e).expect("e >= 1") as u128;
                }
            }
            d += 1;
        }
    }
    sum
}

/// `H_1..=H_tmax` via each of the four formulas, table-driven so a whole
/// range costs about as much as its largest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HtTables {
    pub definition: Vec<u128>,
    pub phi: Vec<u128>,
    pub gcd: Vec<u128>,
    pub divisor: Vec<u128>,
}

impl HtTables {
    /// Index `t - 1` holds `H_t`.
    pub fn compute(tmax: usize, exec: Execution) -> HtTables {
        let totient = totient_table(tmax);
        let coprime = CoprimeTable::new(tmax);

        let definition = parallel::map(exec, (1..=tmax).collect(), |t| {
            let mut sum = 0u128;
            for x in 1..=t {
                let count = (1..=x).filter(|&y| coprime.get(x, y)).count() as u128;
                sum += count * (t / x * x) as u128;
            }
            sum
        });

        let phi = parallel::map(exec, (1..=tmax).collect(), |t| {
            (1..=t).map(|x| totient[x] as u128 * (t / x * x) as u128).sum()
        });

        let psi_values: Vec<u128> =
            parallel::map(exec, (1..=tmax as u64).collect(), psi);
        let gcd = prefix_sums(&psi_values);

        let mut divisor_terms = vec![0u128; tmax + 1];
        for d in 1..=tmax {
            let w = d as u128 * totient[d] as u128;
            for m in (d..=tmax).step_by(d) {
                divisor_terms[m] += w;
            }
        }
        let divisor = prefix_sums(&divisor_terms[1..]);

        HtTables { definition, phi, gcd, divisor }
    }

    /// First `t` where the four formulas disagree.
    pub fn first_disagreement(&self) -> Option<usize> {
        (0..self.definition.len())
            .find(|&i| {
                let d = self.definition[i];
                self.phi[i] != d || self.gcd[i] != d || self.divisor[i] != d
            })
            .map(|i| i + 1)
    }
}

fn prefix_sums(v: &[u128]) -> Vec<u128> {
    v.iter()
        .scan(0u128, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Lower-triangular coprimality bitmap for `1 <= y <= x <= n`.
struct CoprimeTable {
    bits: Vec<bool>,
}

impl CoprimeTable {
    fn new(n: usize) -> Self {
        let mut bits = vec![false; (n + 1) * (n + 2) / 2];
        for x in 1..=n {
            for y in 1..=x {
                bits[x * (x + 1) / 2 + y] = gcd(x as u64, y as u64) == 1;
            }
        }
        CoprimeTable { bits }
    }

    fn get(&self, x: usize, y: usize) -> bool {
        self.bits[x * (x + 1) / 2 + y]
    }
}

/// `(2 zeta(3) / pi^2) t^3`, the leading term of `H_t`.
pub fn ht_asymptotic(t: u64) -> f64 {
    ht_coefficient() * (t as f64).powi(3)
}

fn check_alpha(alpha: Fraction) -> Result<()> {
    if alpha.is_negative() || alpha > Fraction::ONE {
        return Err(Error::Precondition(format!("alpha = {alpha} is outside [0, 1]")));
    }
    Ok(())
}

/// `floor(alpha * x)` for a fraction `alpha`.
fn floor_mul(alpha: Fraction, x: i128) -> i128 {
    (alpha.numer() * x).div_euclid(alpha.denom())
}

/// `U_t^alpha`: sum over primitive `(x, y)` with `x <= t`, `0 < y <= alpha x`,
/// of `floor(t/x) (x, y)`.
pub fn u_t_alpha(t: u64, alpha: Fraction) -> Result<LatticeVector> {
    check_alpha(alpha)?;
    let mut sum = LatticeVector::ZERO;
    for x in 1..=t {
        let q = (t / x) as i128;
        let ymax = floor_mul(alpha, x as i128);
        for y in 1..=ymax {
            if gcd(x, y as u64) == 1 {
                sum += q * LatticeVector::new(x as i128, y);
            }
        }
    }
    Ok(sum)
}

fn check_u(u: Fraction) -> Result<()> {
    if u.is_negative() {
        return Err(Error::Precondition(format!("u = {u} is negative")));
    }
    Ok(())
}

/// `T^alpha(u)`: sum of all integer `(x, y)` with `1 <= x <= u`,
/// `1 <= y <= alpha x`, in closed form per column.
pub fn t_alpha(u: Fraction, alpha: Fraction) -> Result<LatticeVector> {
    check_u(u)?;
    check_alpha(alpha)?;
    Ok(t_alpha_upto(u.floor(), alpha))
}

fn t_alpha_upto(xmax: i128, alpha: Fraction) -> LatticeVector {
    let mut sum = LatticeVector::ZERO;
    for x in 1..=xmax {
        let f = floor_mul(alpha, x);
        sum += LatticeVector::new(x * f, f * (f + 1) / 2);
    }
    sum
}

/// `R^alpha(u)`: the primitive part of `T^alpha(u)`, by enumeration.
pub fn r_alpha_direct(u: Fraction, alpha: Fraction) -> Result<LatticeVector> {
    check_u(u)?;
    check_alpha(alpha)?;
    let mut sum = LatticeVector::ZERO;
    for x in 1..=u.floor() {
        for y in 1..=floor_mul(alpha, x) {
            if gcd(x as u64, y as u64) == 1 {
                sum += LatticeVector::new(x, y);
            }
        }
    }
    Ok(sum)
}

/// `R^alpha(u) = sum_{n <= u} mu(n) n T^alpha(u/n)` by inclusion-exclusion.
pub fn r_alpha_moebius(u: Fraction, alpha: Fraction) -> Result<LatticeVector> {
    check_u(u)?;
    check_alpha(alpha)?;
    let umax = u.floor();
    let mut sum = LatticeVector::ZERO;
    for n in 1..=umax {
        let mu = moebius(n as u64)? as i128;
        if mu != 0 {
            // floor(u/n) = floor(floor(u)/n)
            sum += (mu * n) * t_alpha_upto(umax / n, alpha);
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi_brute(x: u64) -> u64 {
        (1..=x).filter(|&y| gcd(x, y) == 1).count() as u64
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(12).unwrap(), phi_brute(12));
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert_eq!(euler_phi(97).unwrap(), 96);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn totient_sieve_matches_trial_division() {
        let table = totient_table(300);
        for x in 1..=300 {
            assert_eq!(table[x], euler_phi(x as u64).unwrap());
        }
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(4).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
        assert_eq!(moebius(6).unwrap(), 1);
        assert!(moebius(0).is_err());
        let table = moebius_table(500);
        for n in 1..=500 {
            assert_eq!(table[n], moebius(n as u64).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn ht_forms_small_values() {
        assert_eq!(ht_definition(1), 1);
        assert_eq!(ht_definition(5), 43);
        assert_eq!(ht_definition(17), 1339);
        assert_eq!(ht_phi(2), 4);
        assert_eq!(ht_gcd(3), 11);
        assert_eq!(ht_divisor(10), 274);
    }

    #[test]
    fn tables_match_single_value_forms() {
        let tables = HtTables::compute(60, Execution::Sequential);
        assert_eq!(tables.first_disagreement(), None);
        for t in [1u64, 2, 7, 31, 60] {
            let i = t as usize - 1;
            assert_eq!(tables.definition[i], ht_definition(t));
            assert_eq!(tables.phi[i], ht_phi(t));
            assert_eq!(tables.gcd[i], ht_gcd(t));
            assert_eq!(tables.divisor[i], ht_divisor(t));
        }
    }

    #[test]
    fn asymptotic_formula_at_one() {
        assert!((ht_asymptotic(1) - 0.243587656).abs() < 1e-9);
    }

    #[test]
    fn u_t_alpha_examples() {
        let half = Fraction::new(1, 2);
        assert_eq!(u_t_alpha(5, Fraction::ZERO).unwrap(), LatticeVector::ZERO);
        assert_eq!(u_t_alpha(5, Fraction::ONE).unwrap().x, 43);
        assert_eq!(u_t_alpha(5, half).unwrap(), LatticeVector::new(21, 7));
        assert!(u_t_alpha(5, Fraction::new(3, 2)).is_err());
        assert!(u_t_alpha(5, Fraction::new(-1, 2)).is_err());
    }

    fn t_alpha_brute(u: Fraction, alpha: Fraction) -> LatticeVector {
        let mut s = LatticeVector::ZERO;
        for x in 1..=u.floor() {
            for y in 1..=x {
                if Fraction::from_int(y) <= alpha * x {
                    s += LatticeVector::new(x, y);
                }
            }
        }
        s
    }

    #[test]
    fn t_alpha_examples() {
        let f = Fraction::new;
        assert_eq!(t_alpha(f(1, 2), Fraction::ONE).unwrap(), LatticeVector::ZERO);
        assert_eq!(t_alpha(f(3, 1), Fraction::ONE).unwrap(), LatticeVector::new(14, 10));
        // Brute-force double sum gives (13, 5) for u = 4, alpha = 1/2.
        assert_eq!(t_alpha_brute(f(4, 1), f(1, 2)), LatticeVector::new(13, 5));
        assert_eq!(t_alpha(f(4, 1), f(1, 2)).unwrap(), LatticeVector::new(13, 5));
        for (u, a) in [(f(17, 2), f(2, 7)), (f(40, 3), f(5, 9)), (f(25, 1), f(1, 1))] {
            assert_eq!(t_alpha(u, a).unwrap(), t_alpha_brute(u, a));
        }
    }

    #[test]
    fn r_alpha_examples() {
        let f = Fraction::new;
        assert_eq!(r_alpha_direct(f(3, 1), Fraction::ONE).unwrap(), LatticeVector::new(9, 5));
        assert_eq!(r_alpha_direct(f(1, 1), Fraction::ONE).unwrap(), LatticeVector::new(1, 1));
        assert_eq!(r_alpha_moebius(f(3, 1), Fraction::ONE).unwrap(), LatticeVector::new(9, 5));
        assert_eq!(r_alpha_moebius(f(9, 10), Fraction::ONE).unwrap(), LatticeVector::ZERO);
        assert_eq!(
            r_alpha_direct(f(10, 1), f(1, 3)).unwrap(),
            r_alpha_moebius(f(10, 1), f(1, 3)).unwrap()
        );
        assert_eq!(
            r_alpha_direct(f(50, 1), f(2, 5)).unwrap(),
            r_alpha_moebius(f(50, 1), f(2, 5)).unwrap()
        );
        assert!(r_alpha_direct(f(-1, 1), Fraction::ONE).is_err());
    }

    #[test]
    fn u_t_alpha_is_sum_of_r_alpha() {
        // U_t^alpha = sum_k R^alpha(t/k)
        for t in [7u64, 12, 30] {
            for alpha in [Fraction::new(1, 3), Fraction::new(3, 4), Fraction::ONE] {
                let mut s = LatticeVector::ZERO;
                for k in 1..=t as i128 {
                    s += r_alpha_direct(Fraction::new(t as i128, k), alpha).unwrap();
                }
                assert_eq!(s, u_t_alpha(t, alpha).unwrap());
            }
        }
    }

    #[test]
    fn lcm_gcd() {
        assert_eq!(lcm(4, 5), 20);
        assert_eq!(lcm(22, 5), 110);
        assert_eq!(gcd(12, 18), 6);
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Where `A` sits relative to the critical curvatures `1/(2 H_t)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::numtheory::ht_phi;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `1/(2 H_t) < A < 1/(2 H_{t-1})`, with `H_0 = 0`.
    Between { t: u64 },
    /// `A = 1/(2 H_t)`.
    Critical { t: u64 },
}

impl Regime {
    pub fn t(self) -> u64 {
        match self {
            Regime::Between { t } | Regime::Critical { t } => t,
        }
    }
}

pub fn classify(a: Fraction) -> Result<Regime> {
    if !a.is_positive() {
        return Err(Error::Precondition("A must be positive".into()));
    }
    let mut t = 1u64;
    loop {
        let crit = Fraction::new(1, 2 * ht_phi(t) as i128);
        if a == crit {
            return Ok(Regime::Critical { t });
        }
        if a > crit {
            return Ok(Regime::Between { t });
        }
        t += 1;
    }
}

/// Closed interval the average speed must lie in.
pub fn speed_bounds(regime: Regime) -> (Fraction, Fraction) {
    let inv = |d: u64| Fraction::new(1, d as i128);
    match regime {
        Regime::Between { t } if t % 2 == 1 => (inv(t), inv(t)),
        Regime::Between { t } => (inv(t + 1), inv(t - 1)),
        Regime::Critical { t } if t % 2 == 1 => (inv(t + 2), inv(t)),
        Regime::Critical { t } => (inv(t + 1), inv(t - 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        let f = Fraction::new;
        assert_eq!(classify(f(2, 1)).unwrap(), Regime::Between { t: 1 });
        assert_eq!(classify(f(1, 2)).unwrap(), Regime::Critical { t: 1 });
        assert_eq!(classify(f(1, 5)).unwrap(), Regime::Between { t: 2 });
        assert_eq!(classify(f(1, 8)).unwrap(), Regime::Critical { t: 2 });
        assert_eq!(classify(f(1, 10)).unwrap(), Regime::Between { t: 3 });
        assert_eq!(classify(f(1, 44)).unwrap(), Regime::Critical { t: 4 });
        assert!(classify(Fraction::ZERO).is_err());
    }

    #[test]
    fn bounds() {
        let f = Fraction::new;
        assert_eq!(speed_bounds(Regime::Between { t: 3 }), (f(1, 3), f(1, 3)));
        assert_eq!(speed_bounds(Regime::Critical { t: 2 }), (f(1, 3), f(1, 1)));
        assert_eq!(speed_bounds(Regime::Critical { t: 1 }), (f(1, 3), f(1, 1)));
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Chain interchange format:
//! `{"lattice_offset": "0|1/2", "period": {"H": int, "z": int, "w": "p/q"},
//!   "vertices": [[x, y], ...]}`.

use serde::{Deserialize, Serialize};

use super::{AffinePeriodMap, LatticeChain, Point};
use crate::error::{Error, Result};
use crate::fraction::Fraction;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodJson {
    #[serde(rename = "H")]
    pub h: i64,
    pub z: i64,
    pub w: Fraction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    pub lattice_offset: String,
    pub period: PeriodJson,
    pub vertices: Vec<[i64; 2]>,
}

impl ChainJson {
    pub fn from_chain(chain: &LatticeChain) -> Self {
        let m = chain.period();
        let offset = if chain.lattice_offset() == Fraction::ZERO { "0".to_string() } else { "1/2".to_string() };
        ChainJson {
            lattice_offset: offset,
            period: PeriodJson { h: m.h, z: m.z, w: Fraction::from(m.w) },
            vertices: chain.vertices().iter().map(|p| [p.x, p.y]).collect(),
        }
    }

    pub fn to_chain(&self) -> Result<LatticeChain> {
        let offset: Fraction = self.lattice_offset.parse()?;
        let w = self
            .period
            .w
            .to_integer()
            .ok_or_else(|| Error::InvalidChain(format!("w = {} is not integral on the working lattice", self.period.w)))?;
        let w = i64::try_from(w).map_err(|_| Error::InvalidChain("w out of range".into()))?;
        let map = AffinePeriodMap::new(self.period.h, self.period.z, w)?;
        let points = self.vertices.iter().map(|&[x, y]| Point::new(x, y)).collect();
        LatticeChain::new(points, map, offset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_schema() {
        let chain = LatticeChain::new(
            vec![Point::new(0, 0), Point::new(2, 0)],
            AffinePeriodMap::new(4, 1, 1).unwrap(),
            Fraction::ZERO,
        )
        .unwrap();
        let s = chain.to_json_string();
        assert_eq!(s, r#"{"lattice_offset":"0","period":{"H":4,"z":1,"w":"1/1"},"vertices":[[0,0],[2,0]]}"#);
        assert_eq!(LatticeChain::from_json_str(&s).unwrap(), chain);
    }

    #[test]
    fn rejects_fractional_w() {
        let s = r#"{"lattice_offset":"0","period":{"H":4,"z":1,"w":"1/2"},"vertices":[[0,0]]}"#;
        assert!(LatticeChain::from_json_str(s).is_err());
    }
}

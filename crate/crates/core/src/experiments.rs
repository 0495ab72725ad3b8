// SPDX-License-Identifier: Apache-2.0

//! Batch measurements over families of parabolas `y = A x^2 + B x`.
//!
//! Every `(A, B)` cell is independent, so sweeps fan out through
//! [`crate::parallel::map`] and come back sorted by `(A, B)`. A cell that
//! fails (no cycle within budget, peel failure) still yields a row, marked
//! in `flags`.

use std::fmt::Write as _;
use std::io;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::geometry::{vertical_distance, LatticeChain, RationalParabola};
use crate::numtheory::ht_phi;
use crate::parallel::{self, Execution};
use crate::peeler::{classify, horizontal_period, initial_chain, run_cycle, speed_bounds, Regime};

pub const CSV_HEADER: &str =
    "A_num,A_den,B_num,B_den,H,preperiod,delta_m,delta_y,v_num,v_den,tube_lo,tube_hi,predicted_dm,flags";

pub const FLAG_NO_CYCLE: &str = "no-cycle";
pub const FLAG_PEEL_FAILURE: &str = "peel-failure";
pub const FLAG_SPEED_RANGE: &str = "speed-out-of-range";
pub const FLAG_DM_MISMATCH: &str = "dm-mismatch";
pub const FLAG_DM_EXEMPT: &str = "dm-exempt";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub a: Fraction,
    pub b: Fraction,
    pub h: i64,
    pub preperiod: Option<usize>,
    pub delta_m: Option<usize>,
    pub delta_y: Option<i64>,
    pub v: Option<Fraction>,
    /// Largest tube thickness over one cycle.
    pub tube: Option<Fraction>,
    pub predicted_delta_m: Option<i64>,
    pub flags: Vec<String>,
}

impl SweepRow {
    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }
}

/// Peel budget used when the caller gives none: `10 t H`.
pub fn default_max_steps(a: Fraction, h: i64) -> Result<usize> {
    let t = classify(a)?.t();
    Ok(10 * t as usize * h as usize)
}

/// `t (t+1) H / (2 H_t)` for `A = 1/(2 H_t)`.
pub fn predict_delta_m(t: u64, a: Fraction, b: Fraction) -> Result<i64> {
    let ht = ht_phi(t) as i128;
    if a != Fraction::new(1, 2 * ht) {
        return Err(Error::Precondition(format!("A = {a} is not the critical value 1/(2 H_{t})")));
    }
    let h = horizontal_period(&RationalParabola::new(a, b, Fraction::ZERO)?)?.h as i128;
    let p = Fraction::new(t as i128 * (t as i128 + 1) * h, 2 * ht);
    p.to_integer()
        .map(|v| v as i64)
        .ok_or_else(|| Error::Precondition("predicted period is not an integer".into()))
}

/// The prediction does not cover `B` that are integer multiples of `A`.
pub fn prediction_exempt(a: Fraction, b: Fraction) -> bool {
    (b / a).is_integer()
}

/// One cell of a sweep.
pub fn measure(a: Fraction, b: Fraction, max_steps: Option<usize>) -> Result<SweepRow> {
    let par = RationalParabola::new(a, b, Fraction::ZERO)?;
    let h = horizontal_period(&par)?.h;
    let regime = classify(a)?;
    let budget = match max_steps {
        Some(m) => m,
        None => default_max_steps(a, h)?,
    };
    let mut row = SweepRow {
        a,
        b,
        h,
        preperiod: None,
        delta_m: None,
        delta_y: None,
        v: None,
        tube: None,
        predicted_delta_m: None,
        flags: Vec::new(),
    };
    if let Regime::Critical { t } = regime {
        row.predicted_delta_m = Some(predict_delta_m(t, a, b)?);
    }
    let run = initial_chain(&par).and_then(|c| run_cycle(&c, budget));
    match run {
        Ok(run) => {
            let r = &run.report;
            row.preperiod = Some(r.preperiod);
            row.delta_m = Some(r.delta_m);
            row.delta_y = Some(r.delta_y);
            row.v = Some(r.speed);
            row.tube = Some(max_tube(&run.cycle, &par)?);
            let (lo, hi) = speed_bounds(regime);
            if r.speed < lo || r.speed > hi {
                row.flags.push(FLAG_SPEED_RANGE.into());
            }
            if let Some(p) = row.predicted_delta_m {
                if prediction_exempt(a, b) {
                    row.flags.push(FLAG_DM_EXEMPT.into());
                } else if p != r.delta_m as i64 {
                    row.flags.push(FLAG_DM_MISMATCH.into());
                }
            }
        }
        Err(Error::NoCycle { .. }) => row.flags.push(FLAG_NO_CYCLE.into()),
        Err(Error::PeelFailure(_)) => row.flags.push(FLAG_PEEL_FAILURE.into()),
        Err(e) => return Err(e),
    }
    Ok(row)
}

/// Thickest parabolic tube `sup - inf` over the given chains.
pub fn max_tube(chains: &[LatticeChain], par: &RationalParabola) -> Result<Fraction> {
    let mut best: Option<Fraction> = None;
    for c in chains {
        let d = vertical_distance(c, par)?.thickness();
        best = Some(best.map_or(d, |b| b.max(d)));
    }
    best.ok_or_else(|| Error::Precondition("no chains".into()))
}

fn sweep(cells: Vec<(Fraction, Fraction)>, max_steps: Option<usize>, exec: Execution) -> Result<Vec<SweepRow>> {
    let mut cells = cells;
    cells.sort();
    cells.dedup();
    parallel::map(exec, cells, |(a, b)| measure(a, b, max_steps)).into_iter().collect()
}

/// All cells of `a_list × b_list`.
pub fn speed_sweep(
    a_list: &[Fraction],
    b_list: &[Fraction],
    max_steps: Option<usize>,
    exec: Execution,
) -> Result<Vec<SweepRow>> {
    let cells = a_list.iter().flat_map(|&a| b_list.iter().map(move |&b| (a, b))).collect();
    sweep(cells, max_steps, exec)
}

/// Same cells as [`speed_sweep`]; the tube column is what matters here.
pub fn tube_sweep(
    a_list: &[Fraction],
    b_list: &[Fraction],
    max_steps: Option<usize>,
    exec: Execution,
) -> Result<Vec<SweepRow>> {
    speed_sweep(a_list, b_list, max_steps, exec)
}

/// `A = 1/(2 H_t)` against every reduced `B` in `[0, 1)` with denominator at
/// most `b_den_max`.
pub fn critical_profile(t: u64, b_den_max: u64, max_steps: Option<usize>, exec: Execution) -> Result<Vec<SweepRow>> {
    if t == 0 {
        return Err(Error::Precondition("t must be positive".into()));
    }
    let a = Fraction::new(1, 2 * ht_phi(t) as i128);
    speed_sweep(&[a], &unit_fractions(b_den_max), max_steps, exec)
}

/// Reduced fractions in `[0, 1)` with denominator at most `den_max`, sorted.
pub fn unit_fractions(den_max: u64) -> Vec<Fraction> {
    let mut v: Vec<Fraction> = (1..=den_max as i128)
        .flat_map(|d| (0..d).map(move |n| Fraction::new(n, d)))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// `floor` and `ceil` of `x` at `places` decimals, as strings.
pub fn decimal_enclosure(x: Fraction, places: u32) -> (String, String) {
    let scale = 10i128.pow(places);
    let scaled = x * scale;
    (fixed(scaled.floor(), places), fixed(scaled.ceil(), places))
}

fn fixed(v: i128, places: u32) -> String {
    let scale = 10i128.pow(places);
    let sign = if v < 0 { "-" } else { "" };
    let v = v.abs();
    format!("{sign}{}.{:0width$}", v / scale, v % scale, width = places as usize)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn csv_line(row: &SweepRow) -> String {
    let (lo, hi) = row.tube.map(|t| decimal_enclosure(t, 12)).unwrap_or_default();
    let mut s = String::new();
    write!(
        s,
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        row.a.numer(),
        row.a.denom(),
        row.b.numer(),
        row.b.denom(),
        row.h,
        opt(row.preperiod),
        opt(row.delta_m),
        opt(row.delta_y),
        opt(row.v.map(|v| v.numer())),
        opt(row.v.map(|v| v.denom())),
        lo,
        hi,
        opt(row.predicted_delta_m),
        row.flags.join(";"),
    )
    .expect("string write");
    s
}

pub fn write_csv<W: io::Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", csv_line(r))?;
    }
    Ok(())
}

pub fn to_csv_string(rows: &[SweepRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("in-memory write");
    String::from_utf8(buf).expect("ascii")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enclosure_brackets_value() {
        assert_eq!(decimal_enclosure(Fraction::new(1, 3), 4), ("0.3333".into(), "0.3334".into()));
        assert_eq!(decimal_enclosure(Fraction::new(1, 2), 3), ("0.500".into(), "0.500".into()));
        assert_eq!(decimal_enclosure(Fraction::new(-1, 3), 2), ("-0.34".into(), "-0.33".into()));
    }

    #[test]
    fn unit_fraction_count() {
        assert_eq!(unit_fractions(1), vec![Fraction::ZERO]);
        assert_eq!(unit_fractions(4).len(), 6);
    }

    #[test]
    fn prediction_examples() {
        let f = Fraction::new;
        assert_eq!(predict_delta_m(2, f(1, 8), f(1, 5)).unwrap(), 15);
        assert_eq!(predict_delta_m(4, f(1, 44), f(1, 5)).unwrap(), 50);
        assert!(predict_delta_m(2, f(1, 9), f(1, 5)).is_err());
        assert!(prediction_exempt(f(1, 8), f(3, 8)));
        assert!(!prediction_exempt(f(1, 8), f(1, 5)));
    }

    #[test]
    fn csv_shape() {
        let row = measure(Fraction::new(1, 10), Fraction::ZERO, None).unwrap();
        let s = to_csv_string(&[row]);
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let cols: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(cols.len(), 14);
        assert_eq!(&cols[..4], &["1", "10", "0", "1"]);
        assert_eq!((cols[8], cols[9]), ("1", "3"));
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Step-by-step checks of the slope-strip dynamics on `P_t`.
//!
//! For every slope `s = a/b` of `{0} ∪ S_t` the chain has a supporting line
//! `b y - a x = c`; its contact with the chain is a vertex or an edge. Each
//! slope owns a strip `[L_s, R_s]` of width `floor(t/b) b`, the horizontal
//! extent of its edge in `P_t`, and the contact wanders at most `floor(t/2)`
//! away from that strip.

use serde::{Deserialize, Serialize};

use super::step::peel_trace;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::geometry::{LatticeChain, Point};
use crate::gridparabola::{build_grid_parabola, build_slope_set};

/// Contact of a supporting line with a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contact {
    /// `b y - a x` along the line.
    pub c: i128,
    pub left: Point,
    pub right: Point,
    /// Chain vertices on the line (1 or 2 for a strictly convex chain).
    pub vertices_on_line: usize,
}

impl Contact {
    /// Lattice points on the contact segment.
    pub fn lattice_points(&self, b: i64) -> i64 {
        (self.right.x - self.left.x) / b + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripEntry {
    pub slope: Fraction,
    pub a: i64,
    pub b: i64,
    pub l: i64,
    pub r: i64,
    pub l_ext: i64,
    pub r_ext: i64,
    pub left: Point,
    pub right: Point,
    /// Steps at which the supporting line advanced.
    pub jumps: Vec<usize>,
    /// `left.x - L_s` before each step.
    pub left_offsets: Vec<i64>,
}

impl StripEntry {
    pub fn width(&self) -> i64 {
        self.r - self.l
    }
}

/// Strip bookkeeping for every slope of one period of `P_t`, ordered by
/// slope from `0` to `1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeLedger {
    pub t: u64,
    pub entries: Vec<StripEntry>,
}

impl SlopeLedger {
    pub fn new(t: u64) -> Self {
        let half = (t / 2) as i64;
        let ti = t as i64;
        let mut slopes = vec![Fraction::ZERO];
        slopes.extend(build_slope_set(t).slopes);
        let mut entries = Vec::with_capacity(slopes.len());
        let mut next_l = ti;
        for (i, s) in slopes.into_iter().enumerate() {
            let (a, b) = (s.numer() as i64, s.denom() as i64);
            let (l, r) = if i == 0 {
                (0, ti)
            } else {
                let l = next_l;
                next_l += (ti / b) * b;
                (l, next_l)
            };
            entries.push(StripEntry {
                slope: s,
                a,
                b,
                l,
                r,
                l_ext: l - half,
                r_ext: r + half,
                left: Point::new(l, 0),
                right: Point::new(r, 0),
                jumps: Vec::new(),
                left_offsets: Vec::new(),
            });
        }
        SlopeLedger { t, entries }
    }

    pub fn total_jumps(&self) -> usize {
        self.entries.iter().map(|e| e.jumps.len()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub t: u64,
    pub steps_checked: usize,
    pub slopes_checked: usize,
    pub ledger: SlopeLedger,
}

fn window(chain: &LatticeChain, t: u64) -> Vec<Point> {
    let h = chain.period().h;
    let t = t as i64;
    chain.vertices_between(-h - t, 2 * h + 2 * t)
}

/// Supporting line of slope `a/b` below the vertices in `verts`.
pub(crate) fn contact_in(verts: &[Point], a: i64, b: i64) -> Result<Contact> {
    let val = |p: &Point| b as i128 * p.y as i128 - a as i128 * p.x as i128;
    let c = verts.iter().map(val).min().ok_or_else(|| Error::Precondition("empty window".into()))?;
    let first = verts.iter().position(|p| val(p) == c).expect("min exists");
    let last = verts.iter().rposition(|p| val(p) == c).expect("min exists");
    if first == 0 || last + 1 == verts.len() {
        return Err(Error::Precondition(format!("contact of slope {a}/{b} reaches the window edge")));
    }
    Ok(Contact { c, left: verts[first], right: verts[last], vertices_on_line: last - first + 1 })
}

pub fn contact(chain: &LatticeChain, t: u64, slope: Fraction) -> Result<Contact> {
    contact_in(&window(chain, t), slope.numer() as i64, slope.denom() as i64)
}

/// Contacts of one slope along a trace.
pub fn slope_history(trace: &[LatticeChain], t: u64, slope: Fraction) -> Result<Vec<Contact>> {
    trace.iter().map(|c| contact(c, t, slope)).collect()
}

fn violation(step: usize, slope: Fraction, detail: String) -> Error {
    Error::Invariant { step, slope, detail }
}

/// Checks every transition of `trace` (which must start at `P_t`) against
/// the strip properties and returns the filled ledger, or the first
/// violation.
pub fn check_predict_invariants(trace: &[LatticeChain], t: u64) -> Result<InvariantReport> {
    if trace.is_empty() || trace[0] != build_grid_parabola(t) {
        return Err(Error::Precondition(format!("trace does not start at P_{t}")));
    }
    let half = (t / 2) as i64;
    let mut ledger = SlopeLedger::new(t);
    let contacts_of = |chain: &LatticeChain, ledger: &SlopeLedger| -> Result<Vec<Contact>> {
        let verts = window(chain, t);
        ledger.entries.iter().map(|e| contact_in(&verts, e.a, e.b)).collect()
    };
    let mut cur = contacts_of(&trace[0], &ledger)?;
    for step in 0..trace.len() - 1 {
        let next_chain = &trace[step + 1];
        let next = contacts_of(next_chain, &ledger)?;
        for (i, e) in ledger.entries.iter_mut().enumerate() {
            let (k0, k1) = (cur[i], next[i]);
            let fail = |what: &str, p: Point| violation(step, e.slope, format!("{what} at {p}"));
            // (i) point or segment
            if k0.vertices_on_line > 2 {
                return Err(fail("more than two vertices on the supporting line", k0.left));
            }
            // (ii) a segment with k lattice points has length (k-1) b
            let dx = k0.right.x - k0.left.x;
            if dx % e.b != 0 || (k0.right.y - k0.left.y) * e.b != e.a * dx {
                return Err(fail("contact segment is not a multiple of the primitive vector", k0.right));
            }
            let k = k0.lattice_points(e.b);
            // (iii) both endpoints are peeled
            for p in [k0.left, k0.right] {
                if next_chain.value_at_int(p.x) <= Fraction::from(p.y) {
                    return Err(fail("contact endpoint survived the step", p));
                }
            }
            // (iv) the supporting line stays or advances by one grid line
            let jumped = match k1.c - k0.c {
                0 => {
                    let step_v = (e.b, e.a);
                    let shrunk = Point::new(k0.left.x + step_v.0, k0.left.y + step_v.1);
                    let shrunk_r = Point::new(k0.right.x - step_v.0, k0.right.y - step_v.1);
                    if k < 3 || k1.left != shrunk || k1.right != shrunk_r {
                        return Err(fail("stationary line did not shrink by one vector at each end", k1.left));
                    }
                    false
                }
                1 => {
                    if k >= 3 {
                        return Err(fail("line advanced while interior points remained", k0.left));
                    }
                    // (v) the new segment fills the extended strip
                    let lo = k1.left.x - e.l_ext;
                    let hi = e.r_ext - k1.right.x;
                    if !(0..e.b).contains(&lo) || !(0..e.b).contains(&hi) {
                        return Err(fail("post-jump segment does not fill the extended strip", k1.left));
                    }
                    true
                }
                d => return Err(fail(&format!("supporting line moved by {d} grid lines"), k1.left)),
            };
            // (vi) jump position
            let in_range = (e.l + half - (e.b - 1)..=e.l + half).contains(&k0.left.x);
            if jumped != in_range {
                return Err(fail("jump does not match the left-endpoint range", k0.left));
            }
            // left endpoint stays within floor(t/2) of the strip
            let offset = k0.left.x - e.l;
            if offset.abs() > half {
                return Err(fail("left endpoint left the extended strip", k0.left));
            }
            e.left_offsets.push(offset);
            if jumped {
                e.jumps.push(step);
            }
        }
        check_neighbours(&ledger, &cur, step, half)?;
        cur = next;
        for (e, k) in ledger.entries.iter_mut().zip(&cur) {
            e.left = k.left;
            e.right = k.right;
        }
    }
    check_neighbours(&ledger, &cur, trace.len() - 1, half)?;
    let slopes_checked = ledger.entries.len();
    Ok(InvariantReport { t, steps_checked: trace.len() - 1, slopes_checked, ledger })
}

/// (vii) no gaps between consecutive slopes, (viii) breakpoint position.
fn check_neighbours(ledger: &SlopeLedger, contacts: &[Contact], step: usize, half: i64) -> Result<()> {
    for i in 0..contacts.len() - 1 {
        let e = &ledger.entries[i];
        let (here, there) = (contacts[i], contacts[i + 1]);
        if here.right != there.left {
            return Err(violation(
                step,
                e.slope,
                format!("right endpoint {} differs from next slope's left endpoint {}", here.right, there.left),
            ));
        }
        if (here.right.x - e.r).abs() > half {
            return Err(violation(step, e.slope, format!("breakpoint {} too far from {}", here.right, e.r)));
        }
    }
    Ok(())
}

/// Runs one full period from `P_t` and checks every step.
pub fn check_grid_parabola(t: u64) -> Result<InvariantReport> {
    let steps = 2 * (t / 2) as usize + 1;
    let trace = peel_trace(&build_grid_parabola(t), steps)?;
    check_predict_invariants(&trace, t)
}

/// Whether, over one period from `P_t`, every slope's left endpoint visits
/// each offset `-floor(t/2) ..= floor(t/2)` from `L_s` exactly once.
pub fn left_endpoint_coverage(t: u64) -> Result<bool> {
    let half = (t / 2) as i64;
    let steps = 2 * half as usize + 1;
    let trace = peel_trace(&build_grid_parabola(t), steps)?;
    let ledger = SlopeLedger::new(t);
    let expected: Vec<i64> = (-half..=half).collect();
    for e in &ledger.entries {
        let mut offsets = trace[..steps]
            .iter()
            .map(|c| contact(c, t, e.slope).map(|k| k.left.x - e.l))
            .collect::<Result<Vec<_>>>()?;
        offsets.sort_unstable();
        if offsets != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_tile_one_period() {
        for t in 1..=20 {
            let l = SlopeLedger::new(t);
            let h = build_grid_parabola(t).period().h;
            for w in l.entries.windows(2).skip(1) {
                assert_eq!(w[0].r, w[1].l);
            }
            let last = l.entries.last().unwrap();
            assert_eq!((last.l, last.r), (h, h + t as i64));
            for e in &l.entries {
                assert_eq!(e.width(), (t as i64 / e.b) * e.b);
            }
        }
    }

    #[test]
    fn small_cases_hold() {
        for t in [1, 2, 5] {
            let r = check_grid_parabola(t).unwrap();
            assert_eq!(r.steps_checked as u64, 2 * (t / 2) + 1);
        }
    }

    #[test]
    fn p1_has_one_offset() {
        assert!(left_endpoint_coverage(1).unwrap());
        let r = check_grid_parabola(1).unwrap();
        assert!(r.ledger.entries.iter().all(|e| e.left_offsets == vec![0]));
    }

    #[test]
    fn wrong_start_is_rejected() {
        let trace = vec![build_grid_parabola(3)];
        assert!(check_predict_invariants(&trace, 4).is_err());
    }

    #[test]
    fn tampered_trace_is_caught() {
        let p = build_grid_parabola(4);
        let trace = vec![p.clone(), p.translated_up(1)];
        match check_predict_invariants(&trace, 4) {
            Err(Error::Invariant { step: 0, .. }) => {}
            other => panic!("expected a violation, got {other:?}"),
        }
    }
}

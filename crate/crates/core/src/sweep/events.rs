use serde::Serialize;

use crate::dd::Dd;
use crate::exactmath::{le_shifted_square, SquarefullRep};
use crate::Rational;

use super::BRange;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventKind {
    /// `x` reaches `(√m − H)²` and `m` enters `(x, (√x + H)²]`.
    UpperEntry,
    /// `x` reaches `n` and `n` leaves the interval.
    LowerExit,
}

/// A breakpoint of the restricted count `C(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepEvent {
    #[serde(serialize_with = "serialize_dd")]
    pub pos: Dd,
    pub jump: i8,
    pub kind: EventKind,
    pub b: u64,
    /// The squarefull number behind the event (`m` or `n`).
    pub value: u64,
}

fn serialize_dd<S: serde::Serializer>(d: &Dd, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.to_f64())
}

/// `m + H² − 2H√m`, clamped to `[lo, hi]`.
pub(crate) fn entry_position(m: u64, h: Rational, lo: u64, hi: u64) -> Dd {
    let hd = h.to_dd();
    let md = Dd::from_u64(m);
    let pos = md + hd * hd - hd * md.sqrt() * 2.0;
    let (lo, hi) = (Dd::from_u64(lo), Dd::from_u64(hi));
    if pos < lo {
        lo
    } else if pos > hi {
        hi
    } else {
        pos
    }
}

/// Merges exits (sorted by `n`) and entries (sorted by `m`) into position
/// order. An entry precedes an exit iff `(√m − H)² ≤ n`, decided exactly;
/// equal positions therefore put the entry first.
pub(crate) fn merge_events(
    x: u64,
    h: Rational,
    exits: &[SquarefullRep],
    entries: &[SquarefullRep],
    b_range: BRange,
) -> Vec<SweepEvent> {
    let exits = exits.iter().filter(|r| b_range.contains(r.b));
    let entries = entries.iter().filter(|r| b_range.contains(r.b));
    let mut out = Vec::new();
    let mut exits = exits.peekable();
    let mut entries = entries.peekable();
    let hi = 2 * x;
    loop {
        let take_entry = match (entries.peek(), exits.peek()) {
            (Some(m), Some(n)) => le_shifted_square(m.n, n.n, h),
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        if take_entry {
            let m = entries.next().expect("peeked");
            out.push(SweepEvent {
                pos: entry_position(m.n, h, x, hi),
                jump: 1,
                kind: EventKind::UpperEntry,
                b: m.b,
                value: m.n,
            });
        } else {
            let n = exits.next().expect("peeked");
            out.push(SweepEvent {
                pos: Dd::from_u64(n.n),
                jump: -1,
                kind: EventKind::LowerExit,
                b: n.b,
                value: n.n,
            });
        }
    }
    out
}

use rayon::prelude::*;

use crate::dd::Dd;
use crate::quad::KahanSum;

use super::{BRange, SweepEvent};

/// Events per parallel segment. Fixed so that the reduction tree, and
/// hence every rounding, is independent of the thread count.
pub const SEGMENT_EVENTS: usize = 1 << 16;

/// Normalized moments of the channel deviations `D_k(x) = C_k(x) − mean_k`
/// over `[X, 2X]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Moments {
    /// `gram[i][j] = (1/X)∫ D_i D_j dx`.
    pub gram: Vec<Vec<f64>>,
    /// `first[i] = (1/X)∫ D_i dx`.
    pub first: Vec<f64>,
}

struct Partial {
    second: Vec<KahanSum>,
    first: Vec<KahanSum>,
}

impl Partial {
    fn new(k: usize) -> Self {
        Partial {
            second: vec![KahanSum::new(); k * (k + 1) / 2],
            first: vec![KahanSum::new(); k],
        }
    }

    fn add_segment(&mut self, len: f64, counts: &[i64], means: &[f64]) {
        if len <= 0.0 {
            return;
        }
        let k = counts.len();
        let mut idx = 0;
        for i in 0..k {
            let di = counts[i] as f64 - means[i];
            self.first[i].add(len * di);
            for j in i..k {
                let dj = counts[j] as f64 - means[j];
                self.second[idx].add(len * di * dj);
                idx += 1;
            }
        }
    }
}

fn channel_of(channels: &[BRange], b: u64) -> Option<usize> {
    channels.iter().position(|r| r.contains(b))
}

/// Integrates the channel moments over `[X, 2X]`.
///
/// `events` must be in position order, `initial[k]` is `C_k(X)`. Events whose
/// `b` falls in no channel are ignored. The range is cut into blocks of
/// [`SEGMENT_EVENTS`] events; each block starts from counts obtained by a
/// prefix pass over the jumps, blocks are integrated in parallel and the
/// partial sums are reduced in block order.
pub fn integrate_events(
    x: u64,
    events: &[SweepEvent],
    channels: &[BRange],
    initial: &[i64],
    means: &[f64],
) -> Moments {
    let k = channels.len();
    assert_eq!(initial.len(), k);
    assert_eq!(means.len(), k);
    let lo = Dd::from_u64(x);
    let hi = Dd::from_u64(2 * x);

    let blocks: Vec<&[SweepEvent]> = events.chunks(SEGMENT_EVENTS).collect();
    let mut starts = Vec::with_capacity(blocks.len());
    let mut counts = initial.to_vec();
    for block in &blocks {
        starts.push(counts.clone());
        for e in block.iter() {
            if let Some(c) = channel_of(channels, e.b) {
                counts[c] += e.jump as i64;
            }
        }
    }

    let first_pos = events.first().map_or(hi, |e| e.pos);
    let mut head = Partial::new(k);
    head.add_segment((first_pos - lo).to_f64(), initial, means);

    let partials: Vec<Partial> = blocks
        .par_iter()
        .enumerate()
        .map(|(bi, block)| {
            let mut part = Partial::new(k);
            let mut counts = starts[bi].clone();
            let base = bi * SEGMENT_EVENTS;
            for (i, e) in block.iter().enumerate() {
                if let Some(c) = channel_of(channels, e.b) {
                    counts[c] += e.jump as i64;
                }
                let next = events.get(base + i + 1).map_or(hi, |n| n.pos);
                part.add_segment((next - e.pos).to_f64(), &counts, means);
            }
            part
        })
        .collect();

    let mut second = vec![KahanSum::new(); k * (k + 1) / 2];
    let mut first = vec![KahanSum::new(); k];
    for part in std::iter::once(&head).chain(partials.iter()) {
        for (acc, s) in second.iter_mut().zip(&part.second) {
            acc.add(s.value());
        }
        for (acc, s) in first.iter_mut().zip(&part.first) {
            acc.add(s.value());
        }
    }

    let xf = x as f64;
    let mut gram = vec![vec![0.0; k]; k];
    let mut idx = 0;
    for i in 0..k {
        for j in i..k {
            let v = second[idx].value() / xf;
            gram[i][j] = v;
            gram[j][i] = v;
            idx += 1;
        }
    }
    Moments {
        gram,
        first: first.iter().map(|s| s.value() / xf).collect(),
    }
}

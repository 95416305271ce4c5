//! Adaptive 15-point Gauss–Kronrod quadrature and compensated summation.
//!
//! [`integrate`] is a global adaptive scheme in the style of QUADPACK's QAG:
//! the subinterval with the largest error estimate is bisected until the
//! summed estimate meets the tolerance. [`integrate_panels`] first cuts the
//! range into fixed panels, which suits integrands that oscillate on a known
//! scale; panels are integrated in parallel and reduced in order.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Neumaier's variant of Kahan summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut k = KahanSum::new();
        for x in iter {
            k.add(x);
        }
        k
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
        }
    }
}

impl QuadConfig {
    pub fn with_tolerance(abs_tol: f64, rel_tol: f64) -> Self {
        QuadConfig {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
}

/// One Gauss–Kronrod 7/15 panel: (Kronrod value, |Kronrod − Gauss|).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let f1 = f(c - h * x);
        let f2 = f(c + h * x);
        k += w * (f1 + f2);
        if j % 2 == 1 {
            g += WG[j / 2] * (f1 + f2);
        }
    }
    (k * h, ((k - g) * h).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err).then(o.a.total_cmp(&self.a))
    }
}

pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<Integral> {
    if a == b {
        return Ok(Integral {
            value: 0.0,
            abs_error: 0.0,
        });
    }
    let (value, err) = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, err });
    let mut total = value;
    let mut total_err = err;
    let mut splits = 0;
    loop {
        if !total.is_finite() {
            return Err(Error::Quadrature(format!("non-finite integrand on [{a}, {b}]")));
        }
        if total_err <= cfg.abs_tol.max(cfg.rel_tol * total.abs()) {
            break;
        }
        if splits >= cfg.max_subdivisions {
            return Err(Error::Quadrature(format!(
                "error estimate {total_err:e} after {splits} subdivisions of [{a}, {b}]"
            )));
        }
        let worst = heap.pop().expect("heap holds every piece");
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Piece { a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Piece { a: mid, b: worst.b, value: v2, err: e2 });
        splits += 1;
    }
    // Re-add the pieces in position order so the result is independent of
    // the heap's bookkeeping.
    let mut pieces = heap.into_vec();
    pieces.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: KahanSum = pieces.iter().map(|p| p.value).collect();
    let abs_error = pieces.iter().map(|p| p.err).sum();
    Ok(Integral {
        value: value.value(),
        abs_error,
    })
}

/// Integrates over `[a, b]` cut into panels of width about `panel`, each
/// panel adaptively with its share of the absolute tolerance.
pub fn integrate_panels<F>(f: F, a: f64, b: f64, panel: f64, cfg: &QuadConfig) -> Result<Integral>
where
    F: Fn(f64) -> f64 + Sync,
{
    if !(panel > 0.0) {
        return Err(Error::invalid("panel width must be positive"));
    }
    let n = (((b - a) / panel).ceil() as usize).max(1);
    let width = (b - a) / n as f64;
    let local = QuadConfig {
        abs_tol: cfg.abs_tol / n as f64,
        ..*cfg
    };
    let parts: Vec<Integral> = (0..n)
        .into_par_iter()
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == n { b } else { a + width * (i + 1) as f64 };
            integrate(&f, lo, hi, &local)
        })
        .collect::<Result<_>>()?;
    let value: KahanSum = parts.iter().map(|p| p.value).collect();
    Ok(Integral {
        value: value.value(),
        abs_error: parts.iter().map(|p| p.abs_error).sum(),
    })
}

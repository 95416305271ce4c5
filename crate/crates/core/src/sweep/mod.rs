//! Exact variance integrals over `[X, 2X]`.
//!
//! For a set of `b`, let `C(x)` count squarefull `n = a²b³` with `b` in the
//! set and `x < n ≤ (√x + H)²`. `C` is a step function: it drops by one at
//! every `x = n` and rises by one at every `x = (√m − H)²`. Between
//! breakpoints the integrand `(C(x) − mean)²` is constant, so
//!
//! ```text
//! (1/X) ∫_X^{2X} (C(x) − mean)² dx = (1/X) Σ_i (x_{i+1} − x_i)(C_i − mean)²
//! ```
//!
//! is evaluated without discretization error. The `b` axis is split into
//! `J₁ = [1, H^{2/3+ε}]`, `J₂ = (H^{2/3+ε}, X^{1/3}/H^λ]` and `I₂` (the rest);
//! one sweep integrates all three channels and their cross terms.

mod events;
mod integrate;

pub use events::{EventKind, SweepEvent};
pub use integrate::{integrate_events, Moments, SEGMENT_EVENTS};

use serde::{Deserialize, Serialize};

use crate::asymptotics::{c_infinity, ZetaConstants};
use crate::counting::restricted_interval_count;
use crate::exactmath::{icbrt, shifted_square_floor, squarefree_sieve, SquarefullSet, MAX_VALUE};
use crate::quad::KahanSum;
use crate::{Error, Rational, Result};

/// Inclusive range of `b`; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BRange {
    pub lo: u64,
    pub hi: u64,
}

impl BRange {
    pub fn new(lo: u64, hi: u64) -> Self {
        BRange { lo, hi }
    }

    pub fn empty() -> Self {
        BRange { lo: 1, hi: 0 }
    }

    pub fn all() -> Self {
        BRange { lo: 1, hi: u64::MAX }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, b: u64) -> bool {
        self.lo <= b && b <= self.hi
    }

    fn clip(&self, hi: u64) -> BRange {
        BRange {
            lo: self.lo.max(1),
            hi: self.hi.min(hi),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub x: u64,
    pub h: Rational,
    pub eps: f64,
    pub lam: f64,
}

impl ExperimentConfig {
    pub fn new(x: u64, h: Rational, eps: f64, lam: f64) -> Result<Self> {
        let cfg = ExperimentConfig { x, h, eps, lam };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.x == 0 || self.x >= MAX_VALUE / 2 {
            return Err(Error::invalid(format!("X = {} must lie in [1, 2^62)", self.x)));
        }
        if !(self.eps > 0.0 && self.eps < 0.01) {
            return Err(Error::invalid(format!("ε = {} must lie in (0, 0.01)", self.eps)));
        }
        if !(self.lam >= 0.0) || !self.lam.is_finite() {
            return Err(Error::invalid(format!("λ = {} must be nonnegative", self.lam)));
        }
        self.upper_end().map(|_| ())
    }

    /// `H^{2/3+ε}`.
    pub fn b_small_cut(&self) -> f64 {
        self.h.to_f64().powf(2.0 / 3.0 + self.eps)
    }

    /// `X^{1/3}/H^λ`.
    pub fn b_large_cut(&self) -> f64 {
        (self.x as f64).cbrt() / self.h.to_f64().powf(self.lam)
    }

    /// `⌊(√X + H)²⌋`, the top of the interval at the left end.
    pub fn lower_end(&self) -> Result<u64> {
        shifted_square_floor(self.x, self.h)
    }

    /// `⌊(√(2X) + H)²⌋`, the largest squarefull number the sweep can see.
    pub fn upper_end(&self) -> Result<u64> {
        let v = shifted_square_floor(2 * self.x, self.h)?;
        if v >= MAX_VALUE {
            return Err(Error::Overflow("(√(2X) + H)²"));
        }
        Ok(v)
    }

    /// Largest `b` with `b³ ≤ (√(2X) + H)²`.
    pub fn b_max(&self) -> Result<u64> {
        Ok(icbrt(self.upper_end()?))
    }

    /// Squarefull numbers the sweep needs: `(X, (√(2X) + H)²]`.
    pub fn enumerate(&self) -> Result<SquarefullSet> {
        SquarefullSet::enumerate(self.x + 1, self.upper_end()?)
    }
}

/// `H·Σ_{b ∈ range} μ²(b)/b^{3/2}`.
pub fn restricted_mean(h: Rational, range: BRange) -> Result<f64> {
    if range.is_empty() {
        return Ok(0.0);
    }
    let table = squarefree_sieve(range.lo, range.hi)?;
    let s: KahanSum = table
        .iter_squarefree()
        .map(|b| {
            let b = b as f64;
            1.0 / (b * b.sqrt())
        })
        .collect();
    Ok(h.to_f64() * s.value())
}

pub fn build_events(cfg: &ExperimentConfig, b_range: BRange) -> Result<Vec<SweepEvent>> {
    cfg.validate()?;
    let set = cfg.enumerate()?;
    build_events_from(cfg, &set, b_range)
}

/// As [`build_events`], drawing squarefull numbers from a precomputed set
/// covering `(X, (√(2X) + H)²]`.
pub fn build_events_from(
    cfg: &ExperimentConfig,
    set: &SquarefullSet,
    b_range: BRange,
) -> Result<Vec<SweepEvent>> {
    let lower = cfg.lower_end()?;
    let upper = cfg.upper_end()?;
    if !set.covers(cfg.x + 1, upper) {
        return Err(Error::invalid(format!(
            "squarefull set [{}, {}] does not cover ({}, {upper}]",
            set.lo(),
            set.hi(),
            cfg.x
        )));
    }
    if b_range.is_empty() {
        return Ok(Vec::new());
    }
    let exits = set.range(cfg.x + 1, 2 * cfg.x);
    let entries = if lower < upper {
        set.range(lower + 1, upper)
    } else {
        &[]
    };
    Ok(events::merge_events(cfg.x, cfg.h, exits, entries, b_range))
}

fn initial_count(cfg: &ExperimentConfig, range: BRange) -> Result<i64> {
    if range.is_empty() {
        return Ok(0);
    }
    Ok(restricted_interval_count(cfg.x, cfg.h, range.lo, range.hi)? as i64)
}

/// `(1/X)∫_X^{2X} (C(x) − mean)² dx` for `C` restricted to `b_range`.
pub fn variance_exact(cfg: &ExperimentConfig, b_range: BRange, mean: f64) -> Result<f64> {
    cfg.validate()?;
    let set = cfg.enumerate()?;
    variance_exact_from(cfg, &set, b_range, mean)
}

pub fn variance_exact_from(
    cfg: &ExperimentConfig,
    set: &SquarefullSet,
    b_range: BRange,
    mean: f64,
) -> Result<f64> {
    let range = b_range.clip(cfg.b_max()?);
    let events = build_events_from(cfg, set, range)?;
    let initial = initial_count(cfg, range)?;
    let m = integrate_events(cfg.x, &events, &[range], &[initial], &[mean]);
    Ok(m.gram[0][0])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VarianceDiagnostics {
    /// `H·Σ_{b ≤ b_max} μ²(b)/b^{3/2}`, the mean used for `total`.
    pub mean: f64,
    /// `θ₁H`.
    pub theta1_mean: f64,
    /// Total variance about `θ₁H` instead of the truncated mean.
    pub total_theta1_mean: f64,
    pub b_small_cut: f64,
    pub b_large_cut: f64,
    pub b_max: u64,
    pub j1_range: BRange,
    pub j2_range: BRange,
    pub i2_range: BRange,
    /// Per-channel means, in `J₁, J₂, I₂` order.
    pub channel_means: [f64; 3],
    /// `(1/X)∫ D_i D_j` for the channels `J₁, J₂, I₂`.
    pub gram: [[f64; 3]; 3],
    /// `(1/X)∫ D_i`.
    pub first_moments: [f64; 3],
    /// `H^{2/3+ε} ≥ X^{1/3}/H^λ`, so `J₂` is empty.
    pub middle_empty: bool,
    /// Integer `H`; sinc-zero artifacts appear in the `b = 1` layer.
    pub integer_h: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VarianceReport {
    #[serde(rename = "X")]
    pub x: u64,
    #[serde(rename = "H")]
    pub h: Rational,
    pub eps: f64,
    pub lam: f64,
    pub total: f64,
    #[serde(rename = "I1")]
    pub i1: f64,
    #[serde(rename = "I2")]
    pub i2: f64,
    #[serde(rename = "J1")]
    pub j1: f64,
    #[serde(rename = "J2")]
    pub j2: f64,
    /// `2√(J₁J₂) + 2√(I₁I₂)`, bounding `|total − J₁ − J₂ − I₂|`.
    pub cross_bound: f64,
    /// `C∞·H^{2/3}`.
    pub predicted: f64,
    pub ratio: f64,
    pub event_count: u64,
    pub diagnostics: VarianceDiagnostics,
}

pub fn variance_report(cfg: &ExperimentConfig) -> Result<VarianceReport> {
    cfg.validate()?;
    let set = cfg.enumerate()?;
    variance_report_from(cfg, &set)
}

/// [`variance_report`] over a precomputed squarefull set.
pub fn variance_report_from(cfg: &ExperimentConfig, set: &SquarefullSet) -> Result<VarianceReport> {
    cfg.validate()?;
    let b_max = cfg.b_max()?;
    let small = cfg.b_small_cut();
    let large = cfg.b_large_cut();
    let s = (small.floor() as u64).min(b_max);
    let l = (large.floor() as u64).min(b_max);
    let ranges = [
        BRange::new(1, s),
        BRange::new(s + 1, l),
        BRange::new(s.max(l) + 1, b_max),
    ];
    let events = build_events_from(cfg, set, BRange::new(1, b_max))?;
    let mut initial = [0i64; 3];
    let mut means = [0.0; 3];
    for (k, r) in ranges.iter().enumerate() {
        initial[k] = initial_count(cfg, *r)?;
        means[k] = restricted_mean(cfg.h, *r)?;
    }
    let m = integrate_events(cfg.x, &events, &ranges, &initial, &means);
    let g = |i: usize, j: usize| m.gram[i][j];

    let (j1, j2, i2) = (g(0, 0), g(1, 1), g(2, 2));
    let i1 = j1 + j2 + 2.0 * g(0, 1);
    let total: f64 = m.gram.iter().flatten().sum();
    let mean: f64 = means.iter().sum();
    let first: f64 = m.first.iter().sum();
    let theta1_mean = ZetaConstants::global().theta1 * cfg.h.to_f64();
    let delta = mean - theta1_mean;
    let predicted = c_infinity() * cfg.h.to_f64().powf(2.0 / 3.0);

    let mut gram = [[0.0; 3]; 3];
    for (i, row) in gram.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = g(i, j);
        }
    }
    Ok(VarianceReport {
        x: cfg.x,
        h: cfg.h,
        eps: cfg.eps,
        lam: cfg.lam,
        total,
        i1,
        i2,
        j1,
        j2,
        cross_bound: 2.0 * (j1 * j2).sqrt() + 2.0 * (i1.max(0.0) * i2).sqrt(),
        predicted,
        ratio: total / predicted,
        event_count: events.len() as u64,
        diagnostics: VarianceDiagnostics {
            mean,
            theta1_mean,
            total_theta1_mean: total + 2.0 * delta * first + delta * delta,
            b_small_cut: small,
            b_large_cut: large,
            b_max,
            j1_range: ranges[0],
            j2_range: ranges[1],
            i2_range: ranges[2],
            channel_means: means,
            gram,
            first_moments: [m.first[0], m.first[1], m.first[2]],
            middle_empty: s >= l,
            integer_h: cfg.h.is_integer(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{enumerate_squarefull, isqrt};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg(x: u64, h: &str) -> ExperimentConfig {
        ExperimentConfig::new(x, h.parse().unwrap(), 0.005, 2.0 / 9.0 - 0.005 / 3.0).unwrap()
    }

    #[test]
    fn validation() {
        let h = Rational::integer(3).unwrap();
        assert!(ExperimentConfig::new(1000, h, 0.0, 0.1).is_err());
        assert!(ExperimentConfig::new(1000, h, 0.01, 0.1).is_err());
        assert!(ExperimentConfig::new(1000, h, 0.005, -0.1).is_err());
        assert!(ExperimentConfig::new(0, h, 0.005, 0.1).is_err());
        assert!(ExperimentConfig::new(1 << 62, h, 0.005, 0.1).is_err());
        assert!(ExperimentConfig::new(1000, h, 0.005, 0.0).is_ok());
    }

    #[test]
    fn empty_b_range_has_no_events() {
        assert!(build_events(&cfg(10_000, "1"), BRange::empty()).unwrap().is_empty());
    }

    #[test]
    fn squares_only_events() {
        let c = cfg(10_000, "1");
        let ev = build_events(&c, BRange::new(1, 1)).unwrap();
        let exits: Vec<u64> = (101..=141u64).map(|k| k * k).collect();
        // Entries: squares in (101², (√20000 + 1)²] = (10201, 20283.8...].
        let entries: Vec<u64> = (102..=142u64).map(|k| k * k).collect();
        let mut got_exits = vec![];
        let mut got_entries = vec![];
        for e in &ev {
            match e.kind {
                EventKind::LowerExit => got_exits.push(e.value),
                EventKind::UpperEntry => got_entries.push(e.value),
            }
        }
        assert_eq!(got_exits, exits);
        assert_eq!(got_entries, entries);
        for w in ev.windows(2) {
            assert!(w[0].pos <= w[1].pos || w[0].pos == w[1].pos);
        }
    }

    #[test]
    fn event_count_matches_enumeration() {
        let c = cfg(1_000_000, "5");
        let ev = build_events(&c, BRange::all()).unwrap();
        let lower = c.lower_end().unwrap();
        let upper = c.upper_end().unwrap();
        let a = enumerate_squarefull(1_000_001, 2_000_000).unwrap().len();
        let b = enumerate_squarefull(lower + 1, upper).unwrap().len();
        assert_eq!(ev.len(), a + b);
    }

    #[test]
    fn events_are_sorted_and_ties_put_entries_first() {
        let c = cfg(1_000_000, "3");
        let ev = build_events(&c, BRange::all()).unwrap();
        let mut ties = 0;
        for w in ev.windows(2) {
            assert!(!(w[1].pos < w[0].pos), "{:?} then {:?}", w[0], w[1]);
            if w[0].pos == w[1].pos && w[0].kind != w[1].kind {
                ties += 1;
                assert_eq!(w[0].kind, EventKind::UpperEntry);
            }
        }
        // k² leaves exactly when (k + 3)² enters.
        assert!(ties > 0);
    }

    #[test]
    fn jumps_conserve_the_count() {
        let c = cfg(2_000_000, "7.5");
        let ev = build_events(&c, BRange::all()).unwrap();
        let start = crate::counting::interval_count(c.x, c.h).unwrap() as i64;
        let end = crate::counting::interval_count(2 * c.x, c.h).unwrap() as i64;
        let net: i64 = ev.iter().map(|e| e.jump as i64).sum();
        // The exit at x = 2X itself is already applied at the endpoint.
        assert_eq!(start + net, end);
    }

    #[test]
    fn no_events_and_zero_mean_integrate_to_zero() {
        // b ∈ [5000, 6000] cannot occur below 5000³.
        let v = variance_exact(&cfg(10_000, "2"), BRange::new(5000, 6000), 0.0).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn squares_variance_matches_monte_carlo() {
        let c = cfg(10_000, "1");
        let exact = variance_exact(&c, BRange::new(1, 1), 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let samples = 1_000_000;
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in 0..samples {
            let x: f64 = rng.gen_range(10_000.0..20_000.0);
            let top = (x.sqrt() + 1.0).powi(2);
            let lo = isqrt(x.floor() as u64) + 1;
            let hi = isqrt(top.floor() as u64);
            let count = hi + 1 - lo;
            let d = (count as f64 - 1.0).powi(2);
            s += d;
            s2 += d * d;
        }
        let n = samples as f64;
        let mean = s / n;
        let sigma = ((s2 / n - mean * mean) / n).sqrt();
        assert!((exact - mean).abs() <= 3.0 * sigma, "{exact} vs {mean} ± {sigma}");
    }

    #[test]
    fn swapping_tied_events_changes_nothing() {
        let c = cfg(1_000_000, "3");
        let mut ev = build_events(&c, BRange::all()).unwrap();
        let range = [BRange::new(1, c.b_max().unwrap())];
        let init = [crate::counting::interval_count(c.x, c.h).unwrap() as i64];
        let mean = [restricted_mean(c.h, range[0]).unwrap()];
        let a = integrate_events(c.x, &ev, &range, &init, &mean);
        let mut i = 0;
        while i + 1 < ev.len() {
            if ev[i].pos == ev[i + 1].pos {
                ev.swap(i, i + 1);
                i += 2;
            } else {
                i += 1;
            }
        }
        let b = integrate_events(c.x, &ev, &range, &init, &mean);
        assert_eq!(a, b);
    }

    #[test]
    fn thread_count_does_not_change_bits() {
        let c = cfg(2_000_000_000, "12.5");
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| variance_report(&c).unwrap())
        };
        let one = run(1);
        assert!(one.event_count as usize > SEGMENT_EVENTS);
        let four = run(4);
        assert_eq!(one.total.to_bits(), four.total.to_bits());
        assert_eq!(one, four);
    }

    #[test]
    fn report_splits_recombine() {
        let c = cfg(100_000_000, "10.5");
        let r = variance_report(&c).unwrap();
        assert!(r.total >= 0.0 && r.j1 >= 0.0 && r.j2 >= 0.0 && r.i2 >= 0.0 && r.i1 >= 0.0);
        assert!((r.total - r.j1 - r.j2 - r.i2).abs() <= r.cross_bound + 1e-9);
        assert!((r.ratio - r.total / r.predicted).abs() < 1e-15);
        let whole = variance_exact(&c, BRange::all(), r.diagnostics.mean).unwrap();
        assert!((whole - r.total).abs() <= 1e-9 * whole);
        let j1 = variance_exact(&c, r.diagnostics.j1_range, r.diagnostics.channel_means[0]).unwrap();
        assert!((j1 - r.j1).abs() <= 1e-9 * j1.max(1e-300));
        // Shifting the mean: E(C − μ')² = E(C − μ)² + 2(μ − μ')E(C − μ) + (μ − μ')².
        let theta = variance_exact(&c, BRange::all(), r.diagnostics.theta1_mean).unwrap();
        assert!((theta - r.diagnostics.total_theta1_mean).abs() <= 1e-9 * theta);
    }

    #[test]
    fn tiny_h_puts_j1_below_one() {
        let c = cfg(1_000_000, "1/2");
        let r = variance_report(&c).unwrap();
        assert!(r.diagnostics.b_small_cut < 1.0);
        assert!(r.diagnostics.j1_range.is_empty());
        assert_eq!(r.j1, 0.0);
    }

    #[test]
    fn large_lambda_empties_the_middle() {
        let c = ExperimentConfig::new(1_000_000, Rational::integer(50).unwrap(), 0.005, 1.0).unwrap();
        let r = variance_report(&c).unwrap();
        assert!(r.diagnostics.middle_empty);
        assert_eq!(r.j2, 0.0);
        assert!(r.diagnostics.integer_h);
    }

    #[test]
    fn predicted_is_free_of_x() {
        let a = variance_report(&cfg(1_000_000, "6.5")).unwrap();
        let b = variance_report(&cfg(2_000_000, "6.5")).unwrap();
        assert!((a.predicted - b.predicted).abs() < 0.01 * a.predicted);
    }
}

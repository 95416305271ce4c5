//! Diagonal sums
//!
//! ```text
//! D(H) = 2H² Σ_{b ≤ H^{2/3+ε}} μ²(b)/b³ Σ_{n≥1} |w(nH/b^{3/2})|²
//! ```
//!
//! for the sinc kernel `w = S` and for general windows.
//!
//! For `w = S` the inner sum has a closed form. The Fourier series of the
//! second Bernoulli polynomial gives `Σ_{n≥1} cos(2πnp)/n² = π²({p}² − {p} + 1/6)`,
//! hence `Σ_{n≥1} S(np)² = {p}(1 − {p})/(2p²)` and every `b`-term of `D(H)`
//! collapses to `{p_b}(1 − {p_b})` with `p_b = H/b^{3/2}`.
//! [`diagonal_sum`] uses that form. [`windowed_diagonal_sum`] sums over `n`
//! directly and is the route for arbitrary windows (including `S` itself).

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::dd::Dd;
use crate::exactmath::squarefree_sieve;
use crate::quad::{integrate_panels, KahanSum, QuadConfig};
use crate::{Error, Result};

const CHUNK: usize = 1 << 14;

/// `sin(πy)/(πy)`, with `S(0) = 1`.
pub fn sinc(y: f64) -> f64 {
    let x = PI * y;
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `Σ_{n≥1} S(np)²` for `p > 0`, in closed form.
pub fn sinc_square_series(p: f64) -> f64 {
    let f = p - p.floor();
    f * (1.0 - f) / (2.0 * p * p)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagonalParams {
    pub h: f64,
    pub eps: f64,
}

impl DiagonalParams {
    pub fn new(h: f64, eps: f64) -> Result<Self> {
        if !(h >= 1.0) || !h.is_finite() {
            return Err(Error::invalid(format!("diagonal sums need H ≥ 1, got {h}")));
        }
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::invalid(format!("ε must be positive, got {eps}")));
        }
        Ok(DiagonalParams { h, eps })
    }

    /// `H^{2/3+ε}`.
    pub fn b_cut(&self) -> f64 {
        self.h.powf(2.0 / 3.0 + self.eps)
    }

    /// Integer `H` puts every `b = 1` argument on a sinc zero.
    pub fn is_integer_h(&self) -> bool {
        self.h.fract() == 0.0
    }
}

/// `H/b^{3/2}` in double-double, so the fractional part survives large `H`.
fn ratio(h: Dd, b: u64) -> Dd {
    let bd = Dd::from_u64(b);
    h / (bd * bd.sqrt())
}

/// Ordered, chunked reduction of `term(b)` over squarefree `b ≤ b_max`.
fn sum_squarefree<F>(b_max: u64, term: F) -> Result<f64>
where
    F: Fn(u64) -> f64 + Sync,
{
    if b_max == 0 {
        return Ok(0.0);
    }
    let table = squarefree_sieve(1, b_max)?;
    let flags = table.flags();
    let partials: Vec<f64> = flags
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(c, chunk)| {
            let mut acc = KahanSum::new();
            for (i, &sf) in chunk.iter().enumerate() {
                if sf {
                    acc.add(term((c * CHUNK + i) as u64 + 1));
                }
            }
            acc.value()
        })
        .collect();
    Ok(partials.into_iter().collect::<KahanSum>().value())
}

/// `2H² Σ_{b ≤ H^{2/3+ε}} μ²(b)/b³ Σ_{n≥1} S(nH/b^{3/2})²`.
pub fn diagonal_sum(params: &DiagonalParams) -> Result<f64> {
    let h = Dd::from_f64(params.h);
    sum_squarefree(params.b_cut().floor() as u64, |b| {
        let f = ratio(h, b).fract();
        f * (1.0 - f)
    })
}

/// A window `w` for [`windowed_diagonal_sum`].
pub trait Window: Sync {
    fn value(&self, y: f64) -> f64;

    /// `w(y) = 0` (to double precision) for `y` beyond this.
    fn support(&self) -> Option<f64> {
        None
    }

    /// Frequency beyond which the Fourier transform of `|w|²` vanishes (to
    /// double precision). When `p ≤ 1/Ω`, Poisson summation gives
    /// `Σ_{n≥1} |w(np)|² = (1/p)∫₀^∞ |w|² − |w(0)|²/2` exactly.
    fn band_limit(&self) -> Option<f64> {
        None
    }

    /// `∫₀^∞ |w(y)|² dy`.
    fn energy(&self) -> Option<f64> {
        let y = self.support()?;
        let cfg = QuadConfig::with_tolerance(1e-14, 1e-13);
        integrate_panels(|x: f64| self.value(x).powi(2), 0.0, y, 0.5, &cfg)
            .ok()
            .map(|i| i.value)
    }

    /// A constant `c` with `|w(y)|² ≤ c/y²` for `y ≥ 1`; bounds the discarded
    /// tail when neither support nor band limit is known.
    fn tail_constant(&self) -> f64 {
        1.0
    }
}

/// The sinc kernel itself.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sinc;

impl Window for Sinc {
    fn value(&self, y: f64) -> f64 {
        sinc(y)
    }
    fn band_limit(&self) -> Option<f64> {
        Some(1.0)
    }
    fn energy(&self) -> Option<f64> {
        Some(0.5)
    }
    fn tail_constant(&self) -> f64 {
        1.0 / (PI * PI)
    }
}

/// C⁴ bump: 1 on `|x| ≤ 1`, 0 on `|x| ≥ 2`, joined by the degree-9
/// smoothstep `1 − (126t⁵ − 420t⁶ + 540t⁷ − 315t⁸ + 70t⁹)`, `t = |x| − 1`.
///
/// Derivative bounds: `|h'| ≤ 2.461`, `|h''| ≤ 9.372`, `|h'''| ≤ 78.75`,
/// `|h''''| ≤ 622.6`.
pub fn bump(x: f64) -> f64 {
    let a = x.abs();
    if a <= 1.0 {
        1.0
    } else if a >= 2.0 {
        0.0
    } else {
        let t = a - 1.0;
        let t5 = t.powi(5);
        1.0 - t5 * (126.0 + t * (-420.0 + t * (540.0 + t * (-315.0 + t * 70.0))))
    }
}

/// `S(y)·h(y/scale)` with the bump `h`; `scale = H^{ε/4}` in the diagonal
/// comparison.
#[derive(Clone, Copy, Debug)]
pub struct SmoothedSinc {
    pub scale: f64,
}

impl Window for SmoothedSinc {
    fn value(&self, y: f64) -> f64 {
        sinc(y) * bump(y / self.scale)
    }
    fn support(&self) -> Option<f64> {
        Some(2.0 * self.scale)
    }
}

/// `exp(−y²/(2σ²))`.
#[derive(Clone, Copy, Debug)]
pub struct Gaussian {
    pub sigma: f64,
}

impl Window for Gaussian {
    fn value(&self, y: f64) -> f64 {
        (-0.5 * (y / self.sigma).powi(2)).exp()
    }
    fn support(&self) -> Option<f64> {
        // |w|² < 1e-40
        Some(9.6 * self.sigma)
    }
    fn band_limit(&self) -> Option<f64> {
        // FT of exp(−y²/σ²) is σ√π·exp(−π²σ²ξ²) < 1e-18 beyond 2.1/σ.
        Some(2.1 / self.sigma)
    }
    fn energy(&self) -> Option<f64> {
        Some(0.5 * self.sigma * PI.sqrt())
    }
}

/// A window given by a closure and a tail constant for its decay.
pub struct FnWindow<F> {
    pub f: F,
    pub tail_constant: f64,
}

impl<F: Fn(f64) -> f64 + Sync> Window for FnWindow<F> {
    fn value(&self, y: f64) -> f64 {
        (self.f)(y)
    }
    fn tail_constant(&self) -> f64 {
        self.tail_constant
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowedSum {
    pub value: f64,
    /// Upper bound on the inner-sum mass dropped by truncation.
    pub discarded_bound: f64,
}

/// `2H² Σ_{b ≤ H^{2/3+ε}} μ²(b)/b³ Σ_{n≥1} |w(nH/b^{3/2})|²`.
///
/// Per `b`, with `p = H/b^{3/2}`:
/// * band-limited windows with `pΩ ≤ 1` use the Poisson identity;
/// * windows with finite support sum `n ≤ support/p`;
/// * otherwise `n ≤ N_b = max(16, ⌈1/p⌉·2¹⁴)` and the dropped tail is bounded
///   by `2c/N_b` via `|w(y)|² ≤ c/y²`.
pub fn windowed_diagonal_sum(h: f64, eps: f64, window: &dyn Window) -> Result<WindowedSum> {
    let params = DiagonalParams::new(h, eps)?;
    let hd = Dd::from_f64(h);
    let band = window.band_limit();
    let support = window.support();
    let energy = if band.is_some() { window.energy() } else { None };
    let w0 = window.value(0.0).powi(2);
    let c = window.tail_constant();
    let b_max = params.b_cut().floor() as u64;

    let per_b = |b: u64| -> (f64, f64) {
        let p = ratio(hd, b).to_f64();
        let weight = 2.0 * p * p;
        if let (Some(omega), Some(e)) = (band, energy) {
            if p * omega <= 1.0 {
                return (weight * (e / p - 0.5 * w0), 0.0);
            }
        }
        let (n_max, dropped) = match support {
            Some(y) => ((y / p).floor() as u64, 0.0),
            None => {
                let n = ((1.0 / p).ceil() as u64).max(1) << 14;
                let n = n.max(16);
                (n, 2.0 * c / n as f64)
            }
        };
        let inner: KahanSum = (1..=n_max)
            .rev()
            .map(|n| window.value(n as f64 * p).powi(2))
            .collect();
        (weight * inner.value(), dropped)
    };

    let value = sum_squarefree(b_max, |b| per_b(b).0)?;
    let discarded_bound = if support.is_none() {
        sum_squarefree(b_max, |b| per_b(b).1)?
    } else {
        0.0
    };
    Ok(WindowedSum {
        value,
        discarded_bound,
    })
}

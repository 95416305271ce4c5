//! Process B for `F_{t,B}(u) = Σ_{B≤b≤u} e(−t·log b/2π)`.
//!
//! With `f(x) = −t·log x/(2π)` (taking `t > 0`), `f'(x) = −t/(2πx) < 0` and
//! `f''(x) = t/(2πx²) > 0`. The derivative runs over `[α, β]` with
//! `α = f'(B) = −t/(2πB)` and `β = f'(u) = −t/(2πu)`, so the stationary
//! frequencies `ν` are the negative integers in `[α, β]`, with stationary
//! points `x_ν = −t/(2πν)` and
//!
//! ```text
//! F_{t,B}(u) ≈ e(1/8) Σ_{α≤ν≤β} e(f(x_ν) − νx_ν)/√f''(x_ν),
//! f(x_ν) − νx_ν = −t·log(x_ν)/(2π) + t/(2π).
//! ```
//!
//! Negative `t` is handled by conjugation.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExpSumSpec {
    pub t: f64,
    pub b: u64,
    pub u: f64,
}

impl ExpSumSpec {
    pub fn new(t: f64, b: u64, u: f64) -> Result<Self> {
        if b < 2 {
            return Err(Error::invalid(format!("B = {b} must be at least 2")));
        }
        if !(u >= b as f64 && u <= 2.0 * b as f64) {
            return Err(Error::invalid(format!("u = {u} must lie in [B, 2B]")));
        }
        if !(t.abs() >= 2.0) || !t.is_finite() {
            return Err(Error::invalid(format!("|t| = {} must be at least 2", t.abs())));
        }
        Ok(ExpSumSpec { t, b, u })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProcessB {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub discrepancy: f64,
    /// `log(2 + β − α) + B/√|t|`.
    pub predicted_error: f64,
    pub alpha: f64,
    pub beta: f64,
    pub stationary_points: usize,
    /// No integer in `[α, β]`; `rhs` is zero.
    pub empty_range: bool,
}

/// `e(θ) = exp(2πiθ)` for `θ = −t·log(x)/(2π)`.
fn log_phase(t: f64, x: f64) -> Complex64 {
    let (s, c) = (t * x.ln()).sin_cos();
    Complex64::new(c, -s)
}

pub fn process_b_check(spec: &ExpSumSpec) -> Result<ProcessB> {
    let spec = ExpSumSpec::new(spec.t, spec.b, spec.u)?;
    let t = spec.t.abs();
    let flip = |z: Complex64| if spec.t < 0.0 { z.conj() } else { z };

    let top = spec.u.floor() as u64;
    let mut lhs = Complex64::new(0.0, 0.0);
    for b in (spec.b..=top).rev() {
        lhs += log_phase(t, b as f64);
    }

    let alpha = -t / (2.0 * PI * spec.b as f64);
    let beta = -t / (2.0 * PI * spec.u);
    let (nu_lo, nu_hi) = (alpha.ceil() as i64, beta.floor() as i64);
    let mut rhs = Complex64::new(0.0, 0.0);
    let mut count = 0;
    for nu in nu_lo..=nu_hi.min(-1) {
        let x = -t / (2.0 * PI * nu as f64);
        let f2 = t / (2.0 * PI * x * x);
        // e(f(x_ν) − νx_ν) = e(−t·log x_ν/2π)·e^{it}
        let (s, c) = t.sin_cos();
        rhs += log_phase(t, x) * Complex64::new(c, s) / f2.sqrt();
        count += 1;
    }
    rhs *= Complex64::from_polar(1.0, PI / 4.0);

    let (lhs, rhs) = (flip(lhs), flip(rhs));
    Ok(ProcessB {
        lhs,
        rhs,
        discrepancy: (lhs - rhs).norm(),
        predicted_error: (2.0 + beta - alpha).ln() + spec.b as f64 / t.sqrt(),
        alpha,
        beta,
        stationary_points: count,
        empty_range: count == 0,
    })
}

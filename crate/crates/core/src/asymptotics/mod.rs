//! Real zeta values, the sinc moment, the variance constant `C∞` and the
//! diagonal sums that carry the `H^{2/3}` main term.
//!
//! With `S(y) = sin(πy)/(πy)`,
//!
//! ```text
//! C∞ = 4ζ(4/3)/(3ζ(2)) · ∫₀^∞ S(y)² y^{1/3} dy ≈ 1.0116
//! ```
//!
//! and the predicted variance of short-interval counts is `C∞·H^{2/3}`.

mod diagonal;
mod zeta;

pub use diagonal::{
    bump, diagonal_sum, sinc, sinc_square_series, windowed_diagonal_sum, DiagonalParams, FnWindow,
    Gaussian, Sinc, SmoothedSinc, Window, WindowedSum,
};
pub use zeta::{zeta_em, zeta_real, REAL_DIRECT_TERMS};

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use crate::quad::{integrate, integrate_panels, QuadConfig};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZetaConstants {
    pub z32: f64,
    pub z3: f64,
    pub z23: f64,
    pub z2: f64,
    pub z43: f64,
    /// `ζ(3/2)/ζ(3)`, the leading coefficient of `Q(x)`.
    pub theta1: f64,
    /// `ζ(2/3)/ζ(2)`, negative.
    pub theta2: f64,
    pub sinc_moment: f64,
    pub c_inf: f64,
}

impl ZetaConstants {
    pub fn compute() -> Result<Self> {
        let z32 = zeta_real(1.5)?;
        let z3 = zeta_real(3.0)?;
        let z23 = zeta_real(2.0 / 3.0)?;
        let z2 = zeta_real(2.0)?;
        let z43 = zeta_real(4.0 / 3.0)?;
        let sm = sinc_moment_with(&SincMomentConfig::default())?;
        Ok(ZetaConstants {
            z32,
            z3,
            z23,
            z2,
            z43,
            theta1: z32 / z3,
            theta2: z23 / z2,
            sinc_moment: sm,
            c_inf: c_infinity_from(z43, z2, sm),
        })
    }

    /// Computed once per process and shared.
    pub fn global() -> &'static ZetaConstants {
        static CONSTANTS: OnceLock<ZetaConstants> = OnceLock::new();
        CONSTANTS.get_or_init(|| ZetaConstants::compute().expect("constants at fixed arguments"))
    }
}

/// `(4ζ(4/3)/(3ζ(2))) · moment`.
pub fn c_infinity_from(z43: f64, z2: f64, moment: f64) -> f64 {
    4.0 * z43 / (3.0 * z2) * moment
}

pub fn c_infinity() -> f64 {
    ZetaConstants::global().c_inf
}

#[derive(Clone, Copy, Debug)]
pub struct SincMomentConfig {
    /// `Y₀`: numerical quadrature on `[0, Y₀]`, analytic tail beyond.
    pub cutoff: f64,
    pub quad: QuadConfig,
}

impl Default for SincMomentConfig {
    fn default() -> Self {
        SincMomentConfig {
            cutoff: 64.0,
            quad: QuadConfig::with_tolerance(1e-14, 1e-13),
        }
    }
}

pub fn sinc_moment() -> f64 {
    ZetaConstants::global().sinc_moment
}

/// `∫₀^∞ S(y)² y^{1/3} dy`.
///
/// On `[0, 1]` the substitution `y = v³` removes the `y^{1/3}` cusp. Beyond
/// `Y₀`, `S(y)² = (1 − cos 2πy)/(2π²y²)`: the constant part integrates to
/// `3/(4π²)·Y₀^{-2/3}` and the cosine part is expanded by repeated
/// integration by parts.
pub fn sinc_moment_with(cfg: &SincMomentConfig) -> Result<f64> {
    let y0 = cfg.cutoff;
    let head = integrate(
        |v: f64| {
            let s = sinc(v * v * v);
            3.0 * s * s * v * v * v
        },
        0.0,
        1.0,
        &cfg.quad,
    )?;
    let body = if y0 > 1.0 {
        integrate_panels(
            |y: f64| {
                let s = sinc(y);
                s * s * y.cbrt()
            },
            1.0,
            y0,
            0.5,
            &cfg.quad,
        )?
        .value
    } else {
        0.0
    };
    let tail = (1.5 * y0.powf(-2.0 / 3.0) - cosine_tail(y0, 5.0 / 3.0, 2.0 * PI)) / (2.0 * PI * PI);
    Ok(head.value + body + tail)
}

/// `∫_Y^∞ cos(ωy) y^{-p} dy` by integration by parts, truncated where the
/// asymptotic terms stop shrinking.
fn cosine_tail(y: f64, p: f64, omega: f64) -> f64 {
    let (sin, cos) = (omega * y).sin_cos();
    let mut total = 0.0;
    let mut coeff = 1.0;
    let mut q = p;
    let mut cosine_kind = true;
    let mut prev = f64::INFINITY;
    for _ in 0..60 {
        let term = if cosine_kind {
            -coeff * sin * y.powf(-q) / omega
        } else {
            coeff * cos * y.powf(-q) / omega
        };
        let size = (coeff * y.powf(-q) / omega).abs();
        if size > prev || size < 1e-22 {
            break;
        }
        total += term;
        prev = size;
        coeff *= if cosine_kind { q / omega } else { -q / omega };
        q += 1.0;
        cosine_kind = !cosine_kind;
    }
    total
}

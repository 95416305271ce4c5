use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::zeta_em;
use crate::quad::{integrate_panels, QuadConfig};
use crate::{Error, Result};

pub const CRITICAL_T_MAX: f64 = 1e5;

/// Direct terms for `ζ(1/2 + it)`: with `N ≥ |t|/π` the Euler–Maclaurin
/// corrections shrink by at least a factor of about four per term.
fn critical_terms(t: f64) -> usize {
    (t.abs() / PI).ceil() as usize + 10
}

fn zeta_half(t: f64) -> Complex64 {
    zeta_em(Complex64::new(0.5, t), critical_terms(t))
}

/// `ζ(1/2 + it)` for `2 ≤ |t| ≤ 10⁵`.
pub fn zeta_critical(t: f64) -> Result<Complex64> {
    if !(2.0..=CRITICAL_T_MAX).contains(&t.abs()) {
        return Err(Error::OutOfRange {
            what: "|t|",
            value: t.abs(),
            range: "[2, 1e5]",
        });
    }
    Ok(zeta_half(t))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FourthMoment {
    pub t: f64,
    /// `∫₀^T |ζ(1/2+it)|⁴ dt`.
    pub integral: f64,
    /// `(1/T)∫₀^T |ζ|⁴ / log⁴T`.
    pub normalized: f64,
}

pub fn fourth_moment(t_max: f64) -> Result<FourthMoment> {
    if !(t_max > 2.0 && t_max <= CRITICAL_T_MAX) {
        return Err(Error::OutOfRange {
            what: "T",
            value: t_max,
            range: "(2, 1e5]",
        });
    }
    let cfg = QuadConfig {
        abs_tol: 1e-7 * t_max,
        rel_tol: 1e-8,
        max_subdivisions: 200,
    };
    let integral = integrate_panels(|t: f64| zeta_half(t).norm_sqr().powi(2), 0.0, t_max, 1.0, &cfg)?.value;
    Ok(FourthMoment {
        t: t_max,
        integral,
        normalized: integral / t_max / t_max.ln().powi(4),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SubconvexityScan {
    pub t: f64,
    pub max_abs: f64,
    pub argmax: f64,
    /// `max_{2≤t≤T}|ζ(1/2+it)| / (T^{1/6} log²T)`.
    pub normalized: f64,
}

/// Samples `|ζ(1/2+it)|` on `[2, T]` with spacing `step`.
pub fn subconvexity_scan(t_max: f64, step: f64) -> Result<SubconvexityScan> {
    if !(t_max > 2.0 && t_max <= CRITICAL_T_MAX) || !(step > 0.0) {
        return Err(Error::invalid("scan needs 2 < T ≤ 1e5 and a positive step"));
    }
    let n = ((t_max - 2.0) / step).ceil() as usize;
    let (max_abs, argmax) = (0..=n)
        .into_par_iter()
        .map(|i| {
            let t = (2.0 + i as f64 * step).min(t_max);
            (zeta_half(t).norm(), t)
        })
        .reduce(|| (0.0, 0.0), |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a });
    Ok(SubconvexityScan {
        t: t_max,
        max_abs,
        argmax,
        normalized: max_abs / (t_max.powf(1.0 / 6.0) * t_max.ln().powi(2)),
    })
}

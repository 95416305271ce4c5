use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::counting::restricted_interval_count;
use crate::dd::Dd;
use crate::exactmath::squarefree_sieve;
use crate::quad::KahanSum;
use crate::{Error, Rational, Result};

/// `u − [u] − 1/2`, so `ψ(k) = −1/2` at integers.
pub fn psi(u: f64) -> f64 {
    u - u.floor() - 0.5
}

fn psi_dd(u: Dd) -> f64 {
    u.fract() - 0.5
}

/// Residual of the sawtooth form of the restricted interval count:
///
/// ```text
/// Σ_{x < a²b³ ≤ x+y, b ≤ B} μ²(b)
///     = H Σ_{b≤B} μ²(b)/b^{3/2} − Σ_{b≤B} μ²(b)[ψ(√((x+y)/b³)) − ψ(√(x/b³))]
/// ```
///
/// with `y = 2√x·H + H²`. The left side is exact; the right side is evaluated
/// in double-double before rounding each term.
pub fn counting_identity_check(x: u64, h: Rational, b: u64) -> Result<f64> {
    if x == 0 || b == 0 {
        return Err(Error::invalid("counting identity needs x ≥ 1 and B ≥ 1"));
    }
    let lhs = restricted_interval_count(x, h, 1, b)? as f64;
    let hd = h.to_dd();
    let xd = Dd::from_u64(x);
    let root_x = xd.sqrt();
    let table = squarefree_sieve(1, b)?;
    let mut main = KahanSum::new();
    let mut saw = KahanSum::new();
    for b in table.iter_squarefree() {
        let bd = Dd::from_u64(b);
        let b3 = bd * bd * bd;
        let b32 = bd * bd.sqrt();
        main.add(1.0 / b32.to_f64());
        let upper = (root_x + hd) / b32;
        let cube = b.checked_mul(b).and_then(|b2| b2.checked_mul(b));
        let lower = if let Some(c) = cube.filter(|c| x.is_multiple_of(*c)) {
            // Keeps √(x/b³) exact when x = a²b³.
            Dd::from_u64(x / c).sqrt()
        } else {
            (xd / b3).sqrt()
        };
        saw.add(psi_dd(upper) - psi_dd(lower));
    }
    Ok(lhs - (h.to_f64() * main.value() - saw.value()))
}

/// `−Σ_{n≤N} sin(2πnu)/(πn)`, the truncated Fourier series of `ψ`.
pub fn psi_fourier(u: f64, n: u64) -> f64 {
    let ud = Dd::from_f64(u);
    let s: KahanSum = (1..=n)
        .rev()
        .map(|k| {
            // Reduce k·u mod 1 before the sine.
            let f = (ud * k as f64).fract();
            (2.0 * PI * f).sin() / (PI * k as f64)
        })
        .collect();
    -s.value()
}

/// Distance from `u` to the nearest integer.
pub fn dist_to_integer(u: f64) -> f64 {
    let f = u - u.floor();
    f.min(1.0 - f)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnvelopeScan {
    pub n: u64,
    /// `sup_u |ψ(u) − ψ_N(u)| / min(1, 1/(N‖u‖))` over the grid.
    pub constant: f64,
    pub worst_u: f64,
    pub points: usize,
}

/// Fits the constant `C` in `|ψ(u) − ψ_N(u)| ≤ C·min(1, 1/(N‖u‖))`.
///
/// The grid combines `grid` uniform points in `(0, 1/2]` with points
/// `c/N`, `c` log-spaced in `[10⁻², 10²]`, where the Gibbs overshoot lives.
/// Odd symmetry `ψ(−u) = −ψ(u)` covers the other half period.
pub fn psi_fourier_envelope(n: u64, grid: usize) -> EnvelopeScan {
    let mut us: Vec<f64> = (1..=grid).map(|j| 0.5 * j as f64 / grid as f64).collect();
    let near = 400;
    for j in 0..=near {
        let c = 10f64.powf(-2.0 + 4.0 * j as f64 / near as f64);
        let u = c / n as f64;
        if u < 0.5 {
            us.push(u);
        }
    }
    let ratios: Vec<(f64, f64)> = us
        .par_iter()
        .map(|&u| {
            let err = (psi(u) - psi_fourier(u, n)).abs();
            let env = (1.0f64).min(1.0 / (n as f64 * dist_to_integer(u)));
            (err / env, u)
        })
        .collect();
    let (constant, worst_u) = ratios
        .iter()
        .copied()
        .fold((0.0, 0.0), |acc, r| if r.0 > acc.0 { r } else { acc });
    EnvelopeScan {
        n,
        constant,
        worst_u,
        points: us.len(),
    }
}

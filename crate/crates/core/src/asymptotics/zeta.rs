//! Euler–Maclaurin evaluation of `ζ(s)`.
//!
//! ```text
//! ζ(s) = Σ_{k<N} k^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//!        + Σ_{j≥1} B_{2j}/(2j)! · s(s+1)…(s+2j-2) · N^{-s-2j+1} + R
//! ```
//!
//! The correction series is asymptotic; terms are added while they shrink.
//! With `N ≥ |t|/π` successive terms fall by roughly `(|t|/2πN)² ≤ 1/4`.

use num_complex::Complex64;

use crate::{Error, Result};

/// `B_{2j}/(2j)!` for `j = 1..=30`.
const BERNOULLI_OVER_FACTORIAL: [f64; 30] = [
    8.333_333_333_333_333e-2,
    -1.388_888_888_888_889e-3,
    3.306_878_306_878_307e-5,
    -8.267_195_767_195_768e-7,
    2.087_675_698_786_81e-8,
    -5.284_190_138_687_493e-10,
    1.338_253_653_068_467_9e-11,
    -3.389_680_296_322_582_9e-13,
    8.586_062_056_277_845e-15,
    -2.174_868_698_558_062e-16,
    5.509_002_828_360_229_5e-18,
    -1.395_446_468_581_252_3e-19,
    3.534_707_039_629_467e-21,
    -8.953_517_427_037_547e-23,
    2.267_952_452_337_683e-24,
    -5.744_790_668_872_202e-26,
    1.455_172_475_614_865e-27,
    -3.685_994_940_665_310_2e-29,
    9.336_734_257_095_045e-31,
    -2.365_022_415_700_63e-32,
    5.990_671_762_482_134e-34,
    -1.517_454_884_468_290_3e-35,
    3.843_758_125_454_189e-37,
    -9.736_353_072_646_691e-39,
    2.466_247_044_200_681e-40,
    -6.247_076_741_820_743e-42,
    1.582_403_024_464_491_4e-43,
    -4.008_273_685_948_936e-45,
    1.015_307_585_556_955_6e-46,
    -2.571_804_158_241_871_7e-48,
];

/// Number of direct terms used for real arguments.
pub const REAL_DIRECT_TERMS: usize = 20;

/// Euler–Maclaurin with `n` direct terms. `s ≠ 1` is the caller's job.
pub fn zeta_em(s: Complex64, n: usize) -> Complex64 {
    let n = n.max(2);
    let (sigma, t) = (s.re, s.im);
    let power = |k: f64| -> Complex64 {
        // k^{-s}
        let ln = k.ln();
        let (sin, cos) = (t * ln).sin_cos();
        (-sigma * ln).exp() * Complex64::new(cos, -sin)
    };
    let mut direct = Complex64::new(0.0, 0.0);
    for k in (1..n).rev() {
        direct += power(k as f64);
    }
    let nf = n as f64;
    let n_pow = power(nf);
    let mut tail = n_pow * nf / (s - 1.0) + n_pow * 0.5;
    let mut rising = s;
    let mut n_shift = n_pow / nf;
    let mut prev = f64::INFINITY;
    for (j, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = rising * n_shift * *c;
        let size = term.norm();
        if size > prev {
            break;
        }
        tail += term;
        if size <= 1e-18 * (direct + tail).norm().max(1.0) {
            break;
        }
        prev = size;
        let j = j as f64 + 1.0;
        rising *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
        n_shift /= nf * nf;
    }
    direct + tail
}

/// `ζ(s)` for real `s ∈ [-2, 10]`, `s ≠ 1`.
pub fn zeta_real(s: f64) -> Result<f64> {
    if !(-2.0..=10.0).contains(&s) {
        return Err(Error::OutOfRange {
            what: "s",
            value: s,
            range: "[-2, 10]",
        });
    }
    if s == 1.0 {
        return Err(Error::Pole);
    }
    Ok(zeta_em(Complex64::new(s, 0.0), REAL_DIRECT_TERMS).re)
}

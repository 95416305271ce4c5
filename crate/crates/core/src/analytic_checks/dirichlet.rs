use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::exactmath::squarefree_sieve;
use crate::quad::{integrate_panels, QuadConfig};
use crate::{Error, Result};

/// `D(s) = Σ_{n≤N} a_n n^{-s}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletPoly {
    coeffs: Vec<Complex64>,
}

impl DirichletPoly {
    /// `coeffs[k]` is `a_{k+1}`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("a Dirichlet polynomial needs N ≥ 1"));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::invalid("Dirichlet coefficients must be finite"));
        }
        Ok(DirichletPoly { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        DirichletPoly::new(coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `Σ |a_n|²`.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// `D(it) = Σ a_n e^{−it·log n}`.
pub fn dirichlet_eval(d: &DirichletPoly, t: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, a) in d.coeffs.iter().enumerate().rev() {
        let (s, c) = (t * ((k + 1) as f64).ln()).sin_cos();
        acc += a * Complex64::new(c, -s);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeanValue {
    /// `∫₀^T |D(it)|² dt`.
    pub integral: f64,
    /// `T·Σ|a_n|²`.
    pub prediction: f64,
    pub ratio: f64,
    /// `(integral − prediction)/(N·Σ|a_n|²)`.
    pub c: f64,
}

/// Compares `∫₀^T |D(it)|² dt` with `T·Σ|a_n|²`.
///
/// Panels have width `2π/log N`, the period of the fastest cross term.
pub fn mean_value_check(d: &DirichletPoly, t_max: f64) -> Result<MeanValue> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::invalid(format!("T = {t_max} must be positive")));
    }
    let n = d.len();
    let energy = d.energy();
    let panel = if n > 1 {
        2.0 * PI / (n as f64).ln()
    } else {
        t_max
    };
    let cfg = QuadConfig {
        abs_tol: 1e-9 * t_max * energy.max(f64::MIN_POSITIVE),
        rel_tol: 1e-8,
        max_subdivisions: 200,
    };
    let integral = integrate_panels(|t: f64| dirichlet_eval(d, t).norm_sqr(), 0.0, t_max, panel, &cfg)?.value;
    let prediction = t_max * energy;
    Ok(MeanValue {
        integral,
        prediction,
        ratio: integral / prediction,
        c: (integral - prediction) / (n as f64 * energy),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MFlavor {
    /// `Σ_{B<b≤2B} b^{−3/4−it}`.
    Plain,
    /// `Σ_{B<b≤2B} μ²(b) b^{−3/4−3it}`.
    Variance,
}

/// `M(3/4 + it)` over the dyadic block `(B, 2B]`.
pub fn m_poly_eval(b: u64, t: f64, flavor: MFlavor) -> Result<Complex64> {
    if b < 2 {
        return Err(Error::invalid(format!("B = {b} must be at least 2")));
    }
    let table = squarefree_sieve(b + 1, 2 * b)?;
    let freq = match flavor {
        MFlavor::Plain => t,
        MFlavor::Variance => 3.0 * t,
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for k in (b + 1)..=(2 * b) {
        if flavor == MFlavor::Variance && !table.is_squarefree(k) {
            continue;
        }
        let ln = (k as f64).ln();
        let (s, c) = (freq * ln).sin_cos();
        acc += (-0.75 * ln).exp() * Complex64::new(c, -s);
    }
    Ok(acc)
}

/// `|t|^{97/84+ε}/B^{9/4} + B^{1/4}/|t|^{1/2} + log|t|/B^{3/4}`.
pub fn m_poly_envelope(b: u64, t: f64, eps: f64) -> f64 {
    let (b, t) = (b as f64, t.abs());
    t.powf(97.0 / 84.0 + eps) / b.powf(2.25) + b.powf(0.25) / t.sqrt() + t.ln() / b.powf(0.75)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnvelopeFit {
    pub b: u64,
    /// Block lower ends `T`; each block is `[T, 2T)`.
    pub blocks: Vec<f64>,
    /// `max |M(3/4+it)|` per block.
    pub block_max: Vec<f64>,
    /// `max_block block_max / envelope(T)`.
    pub constant: f64,
    /// Least-squares `log C` for `log block_max = log C + log envelope`.
    pub ls_log_constant: f64,
}

/// Scans `t` over dyadic blocks in `[t_lo, t_hi]` (`samples` points each) and
/// fits the constant in front of [`m_poly_envelope`].
pub fn m_poly_scan(b: u64, t_lo: f64, t_hi: f64, samples: usize, eps: f64) -> Result<EnvelopeFit> {
    if !(t_lo >= 2.0 && t_hi > t_lo) || samples == 0 {
        return Err(Error::invalid("scan needs 2 ≤ t_lo < t_hi and samples > 0"));
    }
    let mut blocks = vec![];
    let mut t = t_lo;
    while t < t_hi {
        blocks.push(t);
        t *= 2.0;
    }
    let block_max: Vec<f64> = blocks
        .iter()
        .map(|&lo| {
            let hi = (2.0 * lo).min(t_hi);
            (0..samples)
                .into_par_iter()
                .map(|j| {
                    let t = lo + (hi - lo) * (j as f64 + 0.5) / samples as f64;
                    m_poly_eval(b, t, MFlavor::Plain).map(|z| z.norm())
                })
                .collect::<Result<Vec<f64>>>()
                .map(|v| v.into_iter().fold(0.0, f64::max))
        })
        .collect::<Result<_>>()?;
    let logs: Vec<f64> = blocks
        .iter()
        .zip(&block_max)
        .map(|(&t, &m)| (m / m_poly_envelope(b, t, eps)).ln())
        .collect();
    let constant = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max).exp();
    let ls_log_constant = logs.iter().sum::<f64>() / logs.len() as f64;
    Ok(EnvelopeFit {
        b,
        blocks,
        block_max,
        constant,
        ls_log_constant,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LargeValues {
    pub levels: Vec<f64>,
    /// Fraction of sampled `t ∈ [T, 2T]` with `|M| ≥ level`.
    pub measure: Vec<f64>,
}

/// Level-set measures of `|M(3/4+it)|` on `[T, 2T]`; a diagnostic only.
pub fn large_value_histogram(
    b: u64,
    t: f64,
    samples: usize,
    flavor: MFlavor,
    levels: &[f64],
) -> Result<LargeValues> {
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|j| m_poly_eval(b, t + t * (j as f64 + 0.5) / samples as f64, flavor).map(|z| z.norm()))
        .collect::<Result<_>>()?;
    let measure = levels
        .iter()
        .map(|&v| values.iter().filter(|&&m| m >= v).count() as f64 / samples as f64)
        .collect();
    Ok(LargeValues {
        levels: levels.to_vec(),
        measure,
    })
}

/// `Σ_{B<b≤2B} b^{−3/4}` next to `4((2B)^{1/4} − B^{1/4})`.
pub fn m_plain_at_zero(b: u64) -> Result<(f64, f64)> {
    let direct = m_poly_eval(b, 0.0, MFlavor::Plain)?.re;
    let bf = b as f64;
    Ok((direct, 4.0 * ((2.0 * bf).powf(0.25) - bf.powf(0.25))))
}

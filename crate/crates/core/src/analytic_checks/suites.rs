use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::*;
use crate::{Error, Rational, Result};

/// One line of `verify` output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub params: Value,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// A check that passes when `value ≤ bound`.
    pub fn at_most(check: &str, params: Value, value: f64, bound: f64) -> Self {
        CheckRecord {
            check: check.to_string(),
            params,
            value,
            bound,
            pass: value <= bound,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Psi,
    Dirichlet,
    ProcessB,
    Zeta4,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Psi, Suite::Dirichlet, Suite::ProcessB, Suite::Zeta4];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Psi => "psi",
            Suite::Dirichlet => "dirichlet",
            Suite::ProcessB => "processb",
            Suite::Zeta4 => "zeta4",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite {s:?}; expected psi, dirichlet, processb or zeta4")))
    }
}

/// `count` random `(x, H, B)` with `x ≤ 10¹²`, `H = p/q`, `q ≤ 8`, `H ≤ 100`,
/// `B ≤ 10⁴`, fixed seed.
pub fn identity_instances(count: usize, seed: u64) -> Result<Vec<(u64, Rational, u64)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let x = 10f64.powf(rng.gen_range(0.0..12.0)) as u64;
            let q = rng.gen_range(1..=8u64);
            let p = rng.gen_range(1..=100 * q);
            let b = rng.gen_range(1..=10_000u64);
            Ok((x.max(1), Rational::new(p, q)?, b))
        })
        .collect()
}

/// Largest residual of [`counting_identity_check`] over the instances.
pub fn identity_max_residual(instances: &[(u64, Rational, u64)]) -> Result<f64> {
    use rayon::prelude::*;
    let r: Vec<f64> = instances
        .par_iter()
        .map(|&(x, h, b)| counting_identity_check(x, h, b).map(f64::abs))
        .collect::<Result<_>>()?;
    Ok(r.into_iter().fold(0.0, f64::max))
}

fn psi_suite() -> Result<Vec<CheckRecord>> {
    let inst = identity_instances(1000, 20240601)?;
    let mut out = vec![CheckRecord::at_most(
        "counting_identity",
        json!({"instances": inst.len(), "seed": 20240601}),
        identity_max_residual(&inst)?,
        1e-8,
    )];
    let mut constants = vec![];
    for n in [100, 1_000, 10_000] {
        let scan = psi_fourier_envelope(n, 2000);
        constants.push(scan.constant);
        out.push(CheckRecord::at_most(
            "psi_fourier_envelope",
            json!({"N": n, "worst_u": scan.worst_u, "points": scan.points}),
            scan.constant,
            2.0,
        ));
    }
    let hi = constants.iter().copied().fold(f64::MIN, f64::max);
    let lo = constants.iter().copied().fold(f64::MAX, f64::min);
    out.push(CheckRecord::at_most(
        "psi_fourier_envelope_stability",
        json!({"N": [100, 1000, 10000]}),
        hi / lo,
        2.0,
    ));
    Ok(out)
}

/// Random complex coefficients in the unit square, fixed seed.
pub fn random_poly(n: usize, seed: u64) -> Result<DirichletPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DirichletPoly::new(
        (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
}

fn dirichlet_suite() -> Result<Vec<CheckRecord>> {
    let d = random_poly(50, 11)?;
    let m = mean_value_check(&d, 5000.0)?;
    let mut out = vec![CheckRecord {
        check: "mean_value".into(),
        params: json!({"N": 50, "T": 5000.0, "seed": 11, "c": m.c}),
        value: m.ratio,
        bound: 0.1,
        pass: (m.ratio - 1.0).abs() <= 0.1,
    }];
    let two = DirichletPoly::from_real(&[1.0, 1.0])?;
    let t = 100.0;
    let l2 = 2f64.ln();
    let want = 2.0 * t + 2.0 * (t * l2).sin() / l2;
    out.push(CheckRecord::at_most(
        "mean_value_closed_form",
        json!({"poly": "1 + 2^{-it}", "T": t}),
        (mean_value_check(&two, t)?.integral - want).abs() / want,
        1e-6,
    ));
    for b in [10, 100, 1000] {
        let fit = m_poly_scan(b, 1e3, 1e5, 400, 0.01)?;
        out.push(CheckRecord::at_most(
            "m_poly_envelope",
            json!({"B": b, "t": [1e3, 1e5], "ls_log_constant": fit.ls_log_constant}),
            fit.constant,
            10.0,
        ));
    }
    Ok(out)
}

fn process_b_suite() -> Result<Vec<CheckRecord>> {
    let mut out = vec![];
    let mut specs = vec![];
    for b in [100u64, 1_000, 10_000] {
        specs.push(ExpSumSpec::new(20.0 * b as f64, b, 2.0 * b as f64)?);
    }
    specs.push(ExpSumSpec::new(4.0 * std::f64::consts::PI * 1000.0 * 1.5, 1000, 2000.0)?);
    for spec in specs {
        let r = process_b_check(&spec)?;
        out.push(CheckRecord::at_most(
            "process_b",
            json!({"t": spec.t, "B": spec.b, "u": spec.u, "predicted_error": r.predicted_error,
                   "stationary_points": r.stationary_points}),
            r.discrepancy,
            10.0 * r.predicted_error,
        ));
    }
    Ok(out)
}

fn zeta4_suite() -> Result<Vec<CheckRecord>> {
    let mut out = vec![CheckRecord::at_most(
        "zeta_first_zero",
        json!({"t": 14.134_725_141_734_693}),
        zeta_critical(14.134_725_141_734_693)?.norm(),
        1e-3,
    )];
    for t in [1e2, 1e3, 1e4] {
        let m = fourth_moment(t)?;
        out.push(CheckRecord::at_most(
            "fourth_moment",
            json!({"T": t, "integral": m.integral}),
            m.normalized,
            5.0,
        ));
    }
    for t in [1e2, 1e3, 1e4] {
        let s = subconvexity_scan(t, 0.02)?;
        out.push(CheckRecord::at_most(
            "subconvexity",
            json!({"T": t, "max_abs": s.max_abs, "argmax": s.argmax}),
            s.normalized,
            5.0,
        ));
    }
    Ok(out)
}

pub fn run_suite(suite: Suite) -> Result<Vec<CheckRecord>> {
    match suite {
        Suite::Psi => psi_suite(),
        Suite::Dirichlet => dirichlet_suite(),
        Suite::ProcessB => process_b_suite(),
        Suite::Zeta4 => zeta4_suite(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn instances_are_reproducible() {
        assert_eq!(identity_instances(10, 5).unwrap(), identity_instances(10, 5).unwrap());
    }

    #[test]
    fn process_b_suite_passes() {
        assert!(run_suite(Suite::ProcessB).unwrap().iter().all(|r| r.pass));
    }
}

//! Exact `Q(x)`, short-interval counts and the Bateman–Grosswald
//! approximation.
//!
//! Short intervals have the shape `(x, x + y]` with `y = 2√x·H + H²`, so that
//! the upper end is `(√x + H)²` and `√(x + y) − √x = H`.

use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::ZetaConstants;
use crate::exactmath::{icbrt, isqrt, shifted_square_floor, squarefree_sieve, MAX_VALUE};
use crate::{Error, Rational, Result};

const PAR_THRESHOLD: u64 = 1 << 14;

/// `Q(x)` next to its two-term approximation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CountResult {
    pub x: u64,
    pub q: u64,
    pub bg2: f64,
    pub err: f64,
}

/// `Σ_{b ∈ [b_lo, b_hi], μ²(b)=1} f(b, b³)`, reduced in b-order.
fn sum_over_squarefree_b<F>(b_lo: u64, b_hi: u64, f: F) -> Result<u64>
where
    F: Fn(u64, u64) -> u64 + Sync,
{
    if b_lo > b_hi {
        return Ok(0);
    }
    let table = squarefree_sieve(b_lo, b_hi)?;
    let flags = table.flags();
    let term = |i: usize| {
        if flags[i] {
            let b = b_lo + i as u64;
            f(b, b * b * b)
        } else {
            0
        }
    };
    let len = flags.len();
    Ok(if (len as u64) < PAR_THRESHOLD {
        (0..len).map(term).sum()
    } else {
        (0..len).into_par_iter().map(term).sum()
    })
}

/// Number of squarefull `n ≤ x`, as `Σ_{b squarefree, b³ ≤ x} ⌊√(x/b³)⌋`.
pub fn count_upto(x: u64) -> u64 {
    if x == 0 {
        return 0;
    }
    sum_over_squarefree_b(1, icbrt(x), |_, b3| isqrt(x / b3))
        .expect("sieve range up to ∛x is always within budget")
}

/// `θ₁√x + θ₂∛x`.
pub fn bg_approx(x: f64) -> f64 {
    let c = ZetaConstants::global();
    c.theta1 * x.sqrt() + c.theta2 * x.cbrt()
}

pub fn count_result(x: u64) -> CountResult {
    let q = count_upto(x);
    let bg2 = bg_approx(x as f64);
    CountResult {
        x,
        q,
        bg2,
        err: q as f64 - bg2,
    }
}

/// `Q((√x + H)²) − Q(x)`: squarefull `n` with `x < n ≤ (√x + H)²`.
pub fn interval_count(x: u64, h: Rational) -> Result<u64> {
    check_x(x)?;
    let upper = shifted_square_floor(x, h)?;
    Ok(count_upto(upper) - count_upto(x))
}

/// Like [`interval_count`] but only squarefull `n = a²b³` with
/// `b ∈ [b_lo, b_hi]`.
pub fn restricted_interval_count(x: u64, h: Rational, b_lo: u64, b_hi: u64) -> Result<u64> {
    check_x(x)?;
    let upper = shifted_square_floor(x, h)?;
    let b_hi = b_hi.min(icbrt(upper));
    sum_over_squarefree_b(b_lo.max(1), b_hi, |_, b3| isqrt(upper / b3) - isqrt(x / b3))
}

fn check_x(x: u64) -> Result<()> {
    if x == 0 || x >= MAX_VALUE {
        return Err(Error::invalid(format!("x = {x} must lie in [1, 2^63)")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::enumerate_squarefull;

    #[test]
    fn small_counts() {
        assert_eq!(count_upto(0), 0);
        assert_eq!(count_upto(1), 1);
        assert_eq!(count_upto(100), 14);
        let n = enumerate_squarefull(1, 10_000).unwrap().len() as u64;
        assert_eq!(count_upto(10_000), n);
        // Two-term approximation is already close at 10^4.
        assert!((n as f64 - bg_approx(1e4)).abs() < 10.0);
    }

    #[test]
    fn bg_at_one() {
        let c = ZetaConstants::global();
        assert!((bg_approx(1.0) - (c.theta1 + c.theta2)).abs() < 1e-15);
        assert!((bg_approx(1.0) - 0.685).abs() < 1e-3);
        assert!((bg_approx(1e6) - (c.theta1 * 1e3 + c.theta2 * 1e2)).abs() < 1e-9);
    }

    #[test]
    fn interval_examples() {
        let six = Rational::integer(6).unwrap();
        assert_eq!(interval_count(1, six).unwrap(), 9);
        let tiny = Rational::new(1, 1_000_000).unwrap();
        assert_eq!(interval_count(49, tiny).unwrap(), 0);
        let ten = Rational::integer(10).unwrap();
        let x = 100_000_000;
        let oracle = enumerate_squarefull(x + 1, 10_010u64.pow(2)).unwrap().len() as u64;
        assert_eq!(interval_count(x, ten).unwrap(), oracle);
    }

    #[test]
    fn restricted_counts_partition_the_full_count() {
        let h: Rational = "7.5".parse().unwrap();
        let x = 3_000_000;
        let total = interval_count(x, h).unwrap();
        let parts = restricted_interval_count(x, h, 1, 10).unwrap()
            + restricted_interval_count(x, h, 11, 50).unwrap()
            + restricted_interval_count(x, h, 51, 1_000).unwrap();
        assert_eq!(total, parts);
    }

    #[test]
    fn unit_steps_mark_squarefull_numbers() {
        let reps = enumerate_squarefull(1, 100_000).unwrap();
        let mut is_sf = vec![false; 100_001];
        for r in &reps {
            is_sf[r.n as usize] = true;
        }
        let mut prev = 0;
        for n in 1..=100_000u64 {
            let q = count_upto(n);
            assert_eq!(q - prev, is_sf[n as usize] as u64, "n = {n}");
            prev = q;
        }
    }

    #[test]
    fn rejects_zero_x() {
        assert!(interval_count(0, Rational::integer(1).unwrap()).is_err());
    }
}

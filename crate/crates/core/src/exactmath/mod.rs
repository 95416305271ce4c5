//! Exact integer primitives.
//!
//! Values are `u64` with `u128` (or arbitrary precision, when needed)
//! intermediates. Floating point is only ever used for an initial guess; the
//! returned answer is always settled by an exact comparison.

mod cache;
mod enumerate;
mod sieve;

pub use cache::{read_cache, write_cache, CacheFormat, CACHE_VERSION};
pub use enumerate::{enumerate_squarefull, SquarefullRep, SquarefullSet};
pub use sieve::{small_primes, squarefree_sieve, squarefree_sieve_with, SieveConfig, SquarefreeTable};

use num_bigint::BigInt;

use crate::Rational;

/// Largest value accepted by the range-validated entry points.
pub const MAX_VALUE: u64 = 1 << 63;

/// `⌊√n⌋`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while (r as u128) * (r as u128) > n as u128 {
        r -= 1;
    }
    while ((r + 1) as u128) * ((r + 1) as u128) <= n as u128 {
        r += 1;
    }
    r
}

/// `⌊∛n⌋`.
pub fn icbrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let cube = |r: u64| (r as u128) * (r as u128) * (r as u128);
    let mut r = (n as f64).cbrt() as u64;
    while cube(r) > n as u128 {
        r -= 1;
    }
    while cube(r + 1) <= n as u128 {
        r += 1;
    }
    r
}

/// `⌈√n⌉`.
pub fn isqrt_ceil(n: u64) -> u64 {
    let r = isqrt(n);
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// Decides `m ≤ (√x + h)²` exactly.
///
/// With `h = p/q` the test is `q√m ≤ q√x + p`; squaring once leaves
/// `L = q²(m − x) − p² ≤ 2pq√x`, which is true when `L ≤ 0` and otherwise
/// equivalent to `L² ≤ 4p²q²x`.
pub fn le_shifted_square(m: u64, x: u64, h: Rational) -> bool {
    let (p, q) = (h.num() as i128, h.den() as i128);
    let fast = (|| {
        let q2 = q.checked_mul(q)?;
        let l = q2.checked_mul(m as i128 - x as i128)?.checked_sub(p.checked_mul(p)?)?;
        if l <= 0 {
            return Some(true);
        }
        let lhs = l.checked_mul(l)?;
        let rhs = p
            .checked_mul(p)?
            .checked_mul(q2)?
            .checked_mul(4)?
            .checked_mul(x as i128)?;
        Some(lhs <= rhs)
    })();
    fast.unwrap_or_else(|| {
        let (p, q) = (BigInt::from(h.num()), BigInt::from(h.den()));
        let q2 = &q * &q;
        let l = &q2 * (BigInt::from(m) - BigInt::from(x)) - &p * &p;
        if l <= BigInt::from(0) {
            true
        } else {
            &l * &l <= BigInt::from(4) * &p * &p * q2 * BigInt::from(x)
        }
    })
}

/// `⌊(√x + h)²⌋`, i.e. the largest integer in the short interval
/// `(x, x + 2√x·h + h²]`.
pub fn shifted_square_floor(x: u64, h: Rational) -> crate::Result<u64> {
    let guess = ((x as f64).sqrt() + h.to_f64()).powi(2);
    if !guess.is_finite() || guess >= MAX_VALUE as f64 {
        return Err(crate::Error::Overflow("shifted_square_floor"));
    }
    let mut f = guess as u64;
    while f > 0 && !le_shifted_square(f, x, h) {
        f -= 1;
    }
    while le_shifted_square(f + 1, x, h) {
        f += 1;
    }
    Ok(f)
}

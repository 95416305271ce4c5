use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactmath::{icbrt, isqrt, squarefree_sieve, MAX_VALUE};
use crate::{Error, Result};

/// A squarefull number `n = a²·b³` with `b` squarefree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SquarefullRep {
    pub a: u64,
    pub b: u64,
    pub n: u64,
}

impl SquarefullRep {
    /// Builds the rep, rejecting products that do not fit in `u64`.
    pub fn new(a: u64, b: u64) -> Result<Self> {
        let n = (a as u128) * (a as u128) * (b as u128) * (b as u128) * (b as u128);
        if n > u64::MAX as u128 {
            return Err(Error::Overflow("a²·b³"));
        }
        Ok(SquarefullRep { a, b, n: n as u64 })
    }
}

/// All squarefull `n ∈ [lo, hi]`, sorted by `n`.
///
/// For every squarefree `b ≤ ∛hi`, `a` runs over `⌈√(lo/b³)⌉ ..= ⌊√(hi/b³)⌋`,
/// both ends computed with integer roots of floored quotients.
pub fn enumerate_squarefull(lo: u64, hi: u64) -> Result<Vec<SquarefullRep>> {
    if lo == 0 || lo > hi {
        return Err(Error::invalid(format!(
            "enumeration range [{lo}, {hi}] must satisfy 1 ≤ lo ≤ hi"
        )));
    }
    if hi > MAX_VALUE {
        return Err(Error::invalid(format!("hi = {hi} exceeds 2^63")));
    }
    let b_max = icbrt(hi);
    let table = squarefree_sieve(1, b_max)?;
    let bs: Vec<u64> = table.iter_squarefree().collect();
    let mut reps: Vec<SquarefullRep> = bs
        .par_iter()
        .flat_map_iter(|&b| {
            let b3 = b * b * b;
            // a²b³ ≥ lo  ⇔  a² > ⌊(lo − 1)/b³⌋
            let a_lo = isqrt((lo - 1) / b3) + 1;
            let a_hi = isqrt(hi / b3);
            (a_lo..=a_hi).map(move |a| SquarefullRep { a, b, n: a * a * b3 })
        })
        .collect();
    reps.par_sort_unstable_by_key(|r| r.n);
    Ok(reps)
}

/// A sorted enumeration covering `[lo, hi]`, shared between experiments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefullSet {
    lo: u64,
    hi: u64,
    reps: Vec<SquarefullRep>,
}

impl SquarefullSet {
    pub fn enumerate(lo: u64, hi: u64) -> Result<Self> {
        Ok(SquarefullSet {
            lo,
            hi,
            reps: enumerate_squarefull(lo, hi)?,
        })
    }

    /// Wraps reps read from a cache; they must be sorted, in range and
    /// consistent (`n = a²b³`).
    pub fn from_reps(lo: u64, hi: u64, reps: Vec<SquarefullRep>) -> Result<Self> {
        if lo == 0 || lo > hi {
            return Err(Error::invalid(format!("bad set range [{lo}, {hi}]")));
        }
        for w in reps.windows(2) {
            if w[0].n >= w[1].n {
                return Err(Error::invalid("reps must be strictly increasing in n"));
            }
        }
        for r in &reps {
            if r.n < lo || r.n > hi || SquarefullRep::new(r.a, r.b)?.n != r.n {
                return Err(Error::invalid(format!("inconsistent rep {r:?}")));
            }
        }
        Ok(SquarefullSet { lo, hi, reps })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn reps(&self) -> &[SquarefullRep] {
        &self.reps
    }

    pub fn covers(&self, lo: u64, hi: u64) -> bool {
        self.lo <= lo && hi <= self.hi
    }

    /// Reps with `n ∈ [lo, hi]`. The range must be covered by the set.
    pub fn range(&self, lo: u64, hi: u64) -> &[SquarefullRep] {
        debug_assert!(self.covers(lo, hi) || lo > hi);
        let start = self.reps.partition_point(|r| r.n < lo);
        let end = self.reps.partition_point(|r| r.n <= hi);
        &self.reps[start..end.max(start)]
    }

    pub fn into_reps(self) -> Vec<SquarefullRep> {
        self.reps
    }
}

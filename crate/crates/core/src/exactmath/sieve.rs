use crate::exactmath::isqrt;
use crate::{Error, Result};

/// Segment length and memory budget for [`squarefree_sieve_with`].
#[derive(Clone, Copy, Debug)]
pub struct SieveConfig {
    /// Entries processed per segment; the default keeps a segment cache
    /// resident.
    pub segment_len: usize,
    /// Maximum number of flags a single table may hold.
    pub max_entries: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_len: 1 << 20,
            max_entries: 1 << 32,
        }
    }
}

/// `μ²(b)` for every `b` in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeTable {
    lo: u64,
    hi: u64,
    flags: Vec<bool>,
}

impl SquarefreeTable {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    /// Panics if `b` is outside `[lo, hi]`.
    pub fn is_squarefree(&self, b: u64) -> bool {
        assert!(b >= self.lo && b <= self.hi, "{b} outside sieved range");
        self.flags[(b - self.lo) as usize]
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn iter_squarefree(&self) -> impl Iterator<Item = u64> + '_ {
        self.flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(move |(i, _)| self.lo + i as u64)
    }

    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }
}

/// Primes `≤ limit`, plain Eratosthenes.
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

pub fn squarefree_sieve(lo: u64, hi: u64) -> Result<SquarefreeTable> {
    squarefree_sieve_with(lo, hi, &SieveConfig::default())
}

/// Segmented squarefree sieve: for each prime `p ≤ √hi`, clear the multiples
/// of `p²` one segment at a time.
pub fn squarefree_sieve_with(lo: u64, hi: u64, cfg: &SieveConfig) -> Result<SquarefreeTable> {
    if lo == 0 || lo > hi {
        return Err(Error::invalid(format!("sieve range [{lo}, {hi}] must satisfy 1 ≤ lo ≤ hi")));
    }
    let requested = hi - lo + 1;
    if requested > cfg.max_entries {
        return Err(Error::CapacityExceeded {
            lo,
            hi,
            requested,
            budget: cfg.max_entries,
        });
    }
    if cfg.segment_len == 0 {
        return Err(Error::invalid("segment length must be positive"));
    }
    let primes = small_primes(isqrt(hi));
    let mut flags = vec![true; requested as usize];
    let seg = cfg.segment_len as u64;
    let mut seg_lo = lo;
    loop {
        let seg_hi = seg_lo.saturating_add(seg - 1).min(hi);
        let base = (seg_lo - lo) as usize;
        for &p in &primes {
            let sq = p * p;
            if sq > seg_hi {
                break;
            }
            let mut m = seg_lo.div_ceil(sq) * sq;
            while m <= seg_hi {
                flags[base + (m - seg_lo) as usize] = false;
                m += sq;
            }
        }
        if seg_hi == hi {
            break;
        }
        seg_lo = seg_hi + 1;
    }
    Ok(SquarefreeTable { lo, hi, flags })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squarefree_by_trial_division(n: u64) -> bool {
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d * d) {
                return false;
            }
            d += 1;
        }
        true
    }

    /// One flat pass over `[1, n]`, no segments.
    fn monolithic(n: usize) -> Vec<bool> {
        let mut f = vec![true; n + 1];
        f[0] = false;
        let mut p = 2;
        while p * p <= n {
            let mut j = p * p;
            while j <= n {
                f[j] = false;
                j += p * p;
            }
            p += 1;
        }
        f
    }

    #[test]
    fn single_entries() {
        assert!(squarefree_sieve(1, 1).unwrap().is_squarefree(1));
        assert!(!squarefree_sieve(4, 4).unwrap().is_squarefree(4));
    }

    #[test]
    fn sixty_one_squarefree_up_to_hundred() {
        let t = squarefree_sieve(1, 100).unwrap();
        let brute = (1..=100).filter(|&n| squarefree_by_trial_division(n)).count();
        assert_eq!(brute, 61);
        assert_eq!(t.count(), 61);
        for b in 1..=100 {
            assert_eq!(t.is_squarefree(b), squarefree_by_trial_division(b), "b = {b}");
        }
    }

    #[test]
    fn segmented_matches_monolithic_to_a_million() {
        let n = 1_000_000;
        let flat = monolithic(n);
        let cfg = SieveConfig {
            segment_len: 4093,
            ..SieveConfig::default()
        };
        let t = squarefree_sieve_with(1, n as u64, &cfg).unwrap();
        assert_eq!(t.flags(), &flat[1..]);
    }

    #[test]
    fn overlapping_windows_agree() {
        let a = squarefree_sieve(1_000, 50_000).unwrap();
        let b = squarefree_sieve(30_000, 90_000).unwrap();
        for x in 30_000..=50_000 {
            assert_eq!(a.is_squarefree(x), b.is_squarefree(x));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = SieveConfig {
            segment_len: 1024,
            max_entries: 10,
        };
        assert!(matches!(
            squarefree_sieve_with(1, 100, &cfg),
            Err(Error::CapacityExceeded { requested: 100, .. })
        ));
        assert!(squarefree_sieve(5, 4).is_err());
        assert!(squarefree_sieve(0, 4).is_err());
    }
}

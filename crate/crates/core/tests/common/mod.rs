//! Oracles that share no code with the library beyond its public types.

#![allow(dead_code)]

/// Smallest-prime-factor table for `0..=n`.
pub fn spf_table(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// `flags[k]` is true iff every prime exponent of `k` is at least 2
/// (`k = 1` included), by factoring with the table.
pub fn squarefull_flags(n: usize) -> Vec<bool> {
    let spf = spf_table(n);
    let mut flags = vec![false; n + 1];
    if n >= 1 {
        flags[1] = true;
    }
    for k in 2..=n {
        let mut m = k;
        let mut ok = true;
        while m > 1 {
            let p = spf[m] as usize;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e < 2 {
                ok = false;
                break;
            }
        }
        flags[k] = ok;
    }
    flags
}

/// Squarefull numbers `≤ n`, by factorization.
pub fn squarefull_list(n: usize) -> Vec<u64> {
    squarefull_flags(n)
        .iter()
        .enumerate()
        .filter(|(_, &f)| f)
        .map(|(k, _)| k as u64)
        .collect()
}

/// Squarefreeness by trial division.
pub fn is_squarefree(b: u64) -> bool {
    let mut p = 2;
    while p * p <= b {
        if b.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// `H Σ_{b ≤ b_max, squarefree} b^{-3/2}`, summed from the small end in
/// plain `f64`.
pub fn truncated_mean(h: f64, b_max: u64) -> f64 {
    h * (1..=b_max)
        .filter(|&b| is_squarefree(b))
        .map(|b| (b as f64).powf(-1.5))
        .sum::<f64>()
}

/// `(1/X)∫_X^{2X} (C(x) − mean)² dx` by adaptive cell refinement.
///
/// `C(x) = #{n ∈ list : x < n ≤ (√x + H)²}` is evaluated in floating point.
/// Unit cells `[k, k+1]` hold no exit in their interior, so `C` can only
/// rise inside one; a cell whose values just inside both ends agree is
/// constant and contributes exactly. Other cells are bisected down to width
/// `1e-9` and finished with the midpoint rule.
pub fn riemann_variance(list: &[u64], x: u64, h: f64, mean: f64) -> f64 {
    let count = |t: f64| -> i64 {
        let top = (t.sqrt() + h).powi(2);
        let lo = list.partition_point(|&n| (n as f64) <= t);
        let hi = list.partition_point(|&n| (n as f64) <= top);
        hi as i64 - lo as i64
    };
    let delta = 1e-6;
    fn cell(count: &dyn Fn(f64) -> i64, a: f64, b: f64, mean: f64, delta: f64) -> f64 {
        let w = b - a;
        if w < 1e-9 {
            let d = count(0.5 * (a + b)) as f64 - mean;
            return w * d * d;
        }
        let eps = delta.min(w / 4.0);
        let ca = count(a + eps);
        let cb = count(b - eps);
        if ca == cb {
            let d = ca as f64 - mean;
            return w * d * d;
        }
        let m = 0.5 * (a + b);
        cell(count, a, m, mean, delta) + cell(count, m, b, mean, delta)
    }
    let mut total = 0.0;
    for k in x..2 * x {
        total += cell(&count, k as f64, (k + 1) as f64, mean, delta);
    }
    total / x as f64
}

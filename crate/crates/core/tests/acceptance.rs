//! Acceptance criteria 1 to 10. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use squarefull::analytic_checks::{
    fourth_moment, identity_instances, identity_max_residual, mean_value_check, process_b_check,
    psi_fourier_envelope, random_poly, ExpSumSpec,
};
use squarefull::asymptotics::{c_infinity, diagonal_sum, sinc_moment, zeta_real, DiagonalParams};
use squarefull::cli::run_variance_grid;
use squarefull::counting::{bg_approx, count_upto};
use squarefull::exactmath::enumerate_squarefull;
use squarefull::sweep::{variance_exact, variance_report, BRange, ExperimentConfig};
use squarefull::Rational;

// Independent 30-digit references.
const ZETA_3_2: f64 = 2.612_375_348_685_488;
const ZETA_3: f64 = 1.202_056_903_159_594_3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn criterion_1() -> Outcome {
    let flags = common::squarefull_flags(100_000);
    let mut running = 0u64;
    let mut mismatches = 0;
    for x in 0..=100_000u64 {
        if x >= 1 && flags[x as usize] {
            running += 1;
        }
        if count_upto(x) != running {
            mismatches += 1;
        }
    }
    let all = enumerate_squarefull(1, 1_000_000_000).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let x = rng.gen_range(1..=1_000_000_000u64);
        let len = all.partition_point(|r| r.n <= x) as u64;
        if count_upto(x) != len {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("{mismatches} mismatches"))
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_x = 0;
    let mut violations = 0;
    for i in 0..1000 {
        let x = 10f64.powf(4.0 + 8.0 * i as f64 / 999.0).round() as u64;
        let xf = x as f64;
        let err = (count_upto(x) as f64 - bg_approx(xf)).abs();
        let r = err / xf.powf(1.0 / 6.0);
        if r > worst {
            worst = r;
            worst_x = x;
        }
        if r > 1.0 {
            violations += 1;
        }
    }
    outcome(
        violations == 0,
        format!("max |err|/x^(1/6) = {worst:.4} at x = {worst_x}, {violations} violations"),
    )
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let list = common::squarefull_list(2_100_000);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let x = rng.gen_range(1_000..=1_000_000u64);
        let q = rng.gen_range(1..=4u64);
        let p = rng.gen_range(q..=20 * q);
        let h = Rational::new(p, q).unwrap();
        let cfg = ExperimentConfig::new(x, h, 0.005, 0.2).unwrap();
        let mean = common::truncated_mean(h.to_f64(), cfg.b_max().unwrap());
        let swept = variance_exact(&cfg, BRange::all(), mean).unwrap();
        let oracle = common::riemann_variance(&list, x, h.to_f64(), mean);
        let rel = (swept - oracle).abs() / oracle;
        worst = worst.max(rel);
    }
    outcome(worst <= 1e-6, format!("max relative difference {worst:.3e} over 20 instances"))
}

fn criterion_4() -> Outcome {
    let hs: Vec<Rational> = ["16.5", "32.5", "64.5", "128.5", "256.5"]
        .iter()
        .map(|h| h.parse().unwrap())
        .collect();
    let lam = 2.0 / 9.0 - 0.005 / 3.0;
    let big = run_variance_grid(1_000_000_000_000, &hs, 0.005, lam, None).unwrap();
    let small = run_variance_grid(100_000_000, &hs, 0.005, lam, None).unwrap();
    let slope = big.slope.unwrap_or(f64::NAN);
    let ratios: Vec<f64> = big.reports.iter().map(|r| r.ratio).collect();
    let med = median(ratios.clone());
    let dev_big = median(ratios.iter().map(|r| (r - 1.0).abs()).collect());
    let dev_small = median(small.reports.iter().map(|r| (r.ratio - 1.0).abs()).collect());
    let pass = (0.55..=0.80).contains(&slope) && (0.6..=1.5).contains(&med) && dev_big <= dev_small;
    outcome(
        pass,
        format!(
            "slope {slope:.4}, ratios {:?}, median {med:.4}, median |ratio-1| {dev_big:.4} (X=1e12) vs {dev_small:.4} (X=1e8, {} admissible H)",
            ratios.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>(),
            small.reports.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let c = c_infinity();
    let ratio = |h: f64, eps: f64| {
        diagonal_sum(&DiagonalParams::new(h, eps).unwrap()).unwrap() / (c * h.powf(2.0 / 3.0))
    };
    let eps = 0.005;
    let r3 = ratio(1000.5, eps);
    let r4 = ratio(10_000.5, eps);
    let r5 = ratio(100_000.5, eps);
    let pass = (0.9..=1.1).contains(&r4) && (r5 - 1.0).abs() < (r3 - 1.0).abs();
    outcome(
        pass,
        format!(
            "eps = {eps}: ratio {r3:.4} (H=1e3+0.5), {r4:.4} (H=1e4+0.5), {r5:.4} (H=1e5+0.5); \
             wider-b diagnostic (eps = 1): {:.4} at H=1e4+0.5",
            ratio(10_000.5, 1.0)
        ),
    )
}

/// `Γ(1/3) = 3∫₀^∞ e^{−v³} dv` by composite Simpson on `[0, 7]`.
fn gamma_one_third() -> f64 {
    let n = 200_000;
    let h = 7.0 / n as f64;
    let f = |v: f64| (-v * v * v).exp();
    let mut s = f(0.0) + f(7.0);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
    }
    3.0 * s * h / 3.0
}

fn criterion_6() -> Outcome {
    // ∫₀^∞ (1 − cos ay) y^{−5/3} dy = (3/4)Γ(1/3) a^{2/3}, so the moment is
    // (3/(8π²))·Γ(1/3)·(2π)^{2/3}.
    let closed = 3.0 / (8.0 * PI * PI) * gamma_one_third() * (2.0 * PI).powf(2.0 / 3.0);
    let d_moment = (sinc_moment() - closed).abs();
    let d_zeta2 = (zeta_real(2.0).unwrap() - PI * PI / 6.0).abs();
    let spf = common::spf_table(1_000_000);
    let mut partial = 0.0;
    for b in (1..=1_000_000usize).rev() {
        let mut m = b;
        let mut sf = true;
        while m > 1 {
            let p = spf[m] as usize;
            m /= p;
            if m % p == 0 {
                sf = false;
                break;
            }
        }
        if sf {
            partial += (b as f64).powf(-1.5);
        }
    }
    let theta1 = ZETA_3_2 / ZETA_3;
    let d_sum = (partial - theta1).abs();
    let pass = d_moment <= 1e-8 && d_zeta2 <= 1e-12 && d_sum <= 1e-3;
    outcome(
        pass,
        format!(
            "(a) |moment - closed form| = {d_moment:.2e}; (b) |zeta(2) - pi^2/6| = {d_zeta2:.2e}; \
             (c) |sum_(b<=1e6) - theta1| = {d_sum:.4e} (relative {:.2e})",
            d_sum / theta1
        ),
    )
}

fn criterion_7() -> Outcome {
    let inst = identity_instances(1000, 7).unwrap();
    let residual = identity_max_residual(&inst).unwrap();
    let constants: Vec<f64> = [100, 1_000, 10_000]
        .iter()
        .map(|&n| psi_fourier_envelope(n, 2000).constant)
        .collect();
    let worst = constants.iter().copied().fold(0.0, f64::max);
    outcome(
        residual < 1e-8 && worst <= 2.0,
        format!("max identity residual {residual:.2e}; envelope constants {constants:.4?}"),
    )
}

fn criterion_8() -> Outcome {
    let d = random_poly(50, 8).unwrap();
    let mv = mean_value_check(&d, 5000.0).unwrap();
    let fm = fourth_moment(1e4).unwrap();
    let mut pb = vec![];
    for b in [100u64, 1_000, 10_000] {
        let r = process_b_check(&ExpSumSpec::new(20.0 * b as f64, b, 2.0 * b as f64).unwrap()).unwrap();
        pb.push(r.discrepancy / r.predicted_error);
    }
    let pb_worst = pb.iter().copied().fold(0.0, f64::max);
    let pass = (0.9..=1.1).contains(&mv.ratio) && fm.normalized <= 5.0 && pb_worst <= 10.0;
    outcome(
        pass,
        format!(
            "mean-value ratio {:.4}; fourth moment / log^4 T = {:.4}; Process B discrepancy / predicted {pb:.3?}",
            mv.ratio, fm.normalized
        ),
    )
}

fn criterion_9() -> Outcome {
    let h: Rational = "32.5".parse().unwrap();
    let cfg = ExperimentConfig::new(10_000_000_000, h, 0.005, 2.0 / 9.0 - 0.005 / 3.0).unwrap();
    let r = variance_report(&cfg).unwrap();
    let pass = r.j1 >= 0.5 * r.total && r.i2 <= 0.1 * r.total;
    outcome(
        pass,
        format!(
            "total {:.4}, J1 {:.4} ({:.3} of total, b <= {}), J2 {:.4}, I2 {:.4} ({:.3} of total)",
            r.total,
            r.j1,
            r.j1 / r.total,
            r.diagnostics.j1_range.hi,
            r.j2,
            r.i2,
            r.i2 / r.total
        ),
    )
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_squarefull"))
            .args(["grid", "--X", "1000000000", "--H", "8.5", "16.5", "32.5", "64.5", "128.5", "--out"])
            .arg(&out)
            .args(["--threads", "4"])
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(out).unwrap()
    };
    let a = run("a.csv");
    let b = run("b.csv");
    outcome(a == b && !a.is_empty(), format!("{} bytes, identical: {}", a.len(), a == b))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("exact-count oracle equivalence", criterion_1),
        ("Bateman-Grosswald envelope", criterion_2),
        ("variance exactness", criterion_3),
        ("H^(2/3) law", criterion_4),
        ("diagonal asymptotic", criterion_5),
        ("constant cross-check", criterion_6),
        ("identity suites", criterion_7),
        ("Dirichlet polynomial checks", criterion_8),
        ("b-split diagnostics", criterion_9),
        ("determinism", criterion_10),
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let o = f();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {n:>2} {verdict} [{name}] {} ({:.1}s)",
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

//! The sawtooth identity, Dirichlet polynomial mean values, Process B and zeta on
//! the critical line.

use squarefull::analytic_checks::{
    counting_identity_check, fourth_moment, mean_value_check, process_b_check, psi_fourier_envelope,
    random_poly, run_suite, zeta_critical, ExpSumSpec, Suite,
};
use squarefull::Rational;

fn main() -> squarefull::Result<()> {
    let r = counting_identity_check(123_456_789, Rational::new(65, 2)?, 1000)?;
    println!("identity residual: {r:.3e}");
    for n in [100, 1000] {
        let e = psi_fourier_envelope(n, 2000);
        println!("ψ_N envelope N = {n}: C = {:.4} at u = {:.3e}", e.constant, e.worst_u);
    }

    let mv = mean_value_check(&random_poly(50, 1)?, 2000.0)?;
    println!("mean value ratio: {:.4}", mv.ratio);

    let pb = process_b_check(&ExpSumSpec::new(20_000.0, 1000, 1500.0)?)?;
    println!(
        "process B: |lhs − rhs| = {:.4}, predicted {:.4}, {} stationary points",
        pb.discrepancy, pb.predicted_error, pb.stationary_points
    );

    println!("ζ(1/2 + 14.134725i) = {:.3e}", zeta_critical(14.134725)?);
    let fm = fourth_moment(1000.0)?;
    println!("(1/T)∫|ζ|⁴ / log⁴T at T = 1000: {:.4}", fm.normalized);

    for rec in run_suite(Suite::Psi)? {
        println!("{} {} ≤ {} {}", rec.check, rec.value, rec.bound, if rec.pass { "ok" } else { "FAIL" });
    }
    Ok(())
}

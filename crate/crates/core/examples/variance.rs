//! Exact variance of the short-interval count, with the b-range splits.
//!
//! ```text
//! cargo run --release --example variance -- 1e10 32.5
//! ```

use squarefull::sweep::{variance_report, ExperimentConfig};
use squarefull::Rational;

fn main() -> squarefull::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let x = args.first().map_or(1e9, |s| s.parse().expect("X")) as u64;
    let h: Rational = args.get(1).map_or("16.5", String::as_str).parse()?;
    let eps = 0.005;
    let cfg = ExperimentConfig::new(x, h, eps, 2.0 / 9.0 - eps / 3.0)?;

    let r = variance_report(&cfg)?;
    println!("X = {x}, H = {h}, {} events", r.event_count);
    println!("total      {:.6}", r.total);
    println!("predicted  {:.6}  (ratio {:.4})", r.predicted, r.ratio);
    println!("J1 {:.6}  J2 {:.6}  I2 {:.6}", r.j1, r.j2, r.i2);
    println!("I1 {:.6}  cross bound {:.6}", r.i1, r.cross_bound);
    println!("with mean θ₁H: {:.6}", r.diagnostics.total_theta1_mean);
    Ok(())
}

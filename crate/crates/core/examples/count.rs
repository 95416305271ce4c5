//! Exact `Q(x)` against the two-term Bateman–Grosswald approximation.
//!
//! ```text
//! cargo run --release --example count
//! ```

use squarefull::counting::{count_result, interval_count};
use squarefull::Rational;

fn main() -> squarefull::Result<()> {
    println!("{:>16} {:>10} {:>16} {:>10}", "x", "Q(x)", "bg2", "err");
    for k in 2..=12 {
        let r = count_result(10u64.pow(k));
        println!("{:>16} {:>10} {:>16.3} {:>10.3}", r.x, r.q, r.bg2, r.err);
    }

    let h: Rational = "32.5".parse()?;
    let x = 1_000_000_000;
    println!("squarefull numbers in (x, (√x + {h})²] for x = {x}: {}", interval_count(x, h)?);
    Ok(())
}

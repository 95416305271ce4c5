//! A variance grid over H with its log-log slope and plot data.

use squarefull::cli::{emit_plotdata, grid_csv, run_variance_grid};
use squarefull::Rational;

fn main() -> squarefull::Result<()> {
    let hs: Vec<Rational> = ["8.5", "16.5", "32.5", "64.5"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let grid = run_variance_grid(100_000_000, &hs, 0.005, 0.2, None)?;
    print!("{}", grid_csv(&grid)?);
    for s in &grid.skipped {
        println!("skipped H = {}: {}", s.h, s.reason);
    }
    let path = std::env::temp_dir().join("squarefull_plot.csv");
    emit_plotdata(&grid.reports, &path)?;
    println!("plot data in {}", path.display());
    Ok(())
}

//! Diagonal sums against `C∞·H^{2/3}`, for the sharp cut and smooth windows.

use squarefull::asymptotics::{
    c_infinity, diagonal_sum, windowed_diagonal_sum, DiagonalParams, Gaussian, Sinc, SmoothedSinc,
};

fn main() -> squarefull::Result<()> {
    let c = c_infinity();
    for h in [1e3f64 + 0.5, 1e4 + 0.5, 1e5 + 0.5] {
        let pred = c * h.powf(2.0 / 3.0);
        for eps in [0.005, 1.0] {
            let d = diagonal_sum(&DiagonalParams::new(h, eps)?)?;
            println!("H = {h:>9}  eps = {eps:<5}  diagonal/prediction = {:.4}", d / pred);
        }
    }

    let h = 1e4 + 0.5;
    let eps = 0.005;
    let sinc = windowed_diagonal_sum(h, eps, &Sinc)?;
    let smooth = windowed_diagonal_sum(h, eps, &SmoothedSinc { scale: h.powf(eps / 4.0) })?;
    // Compact support in y costs ~1/p terms per b, so the wide cut is left to the Gaussian.
    let gauss = windowed_diagonal_sum(h, 1.0, &Gaussian { sigma: 1.0 })?;
    println!("sinc window     {:.6} (dropped ≤ {:.2e})", sinc.value, sinc.discarded_bound);
    println!("smoothed sinc   {:.6}", smooth.value);
    println!("gaussian        {:.6}", gauss.value);
    Ok(())
}

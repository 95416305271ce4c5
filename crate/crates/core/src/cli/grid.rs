use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use log::{info, warn};
use rayon::prelude::*;
use serde::Serialize;

use super::output::{format_num, Table, DIAGONAL_COLUMNS, PLOT_COLUMNS, VARIANCE_COLUMNS};
use crate::asymptotics::{c_infinity, diagonal_sum, DiagonalParams};
use crate::exactmath::{read_cache, write_cache, CacheFormat, SquarefullSet};
use crate::sweep::{variance_report_from, ExperimentConfig, VarianceReport};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ManifestConfig {
    #[serde(rename = "X")]
    pub x: Option<u64>,
    pub h_grid: Vec<String>,
    pub eps: f64,
    pub lam: Option<f64>,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
    pub threads: usize,
}

/// Inputs, environment and outputs of one run. Timestamps differ between
/// runs; everything else, and every numeric output, does not.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub toolkit_version: String,
    pub command: String,
    pub config: ManifestConfig,
    pub started_unix: u64,
    pub finished_unix: u64,
    pub cache_paths: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn start(command: &str, config: ManifestConfig) -> Self {
        RunManifest {
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config,
            started_unix: unix_now(),
            finished_unix: 0,
            cache_paths: vec![],
            outputs: vec![],
        }
    }

    pub fn finish(&mut self) {
        self.finished_unix = unix_now();
    }
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Skipped {
    #[serde(rename = "H")]
    pub h: Rational,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VarianceGrid {
    pub reports: Vec<VarianceReport>,
    pub skipped: Vec<Skipped>,
    /// Least-squares slope of `log total` against `log H`; `None` with fewer
    /// than two reports.
    pub slope: Option<f64>,
}

/// Least-squares slope through `(x, y)` points.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// `X^{0.01} < H < X^{0.25}`.
pub fn admissible(x: u64, h: Rational) -> bool {
    let (x, h) = (x as f64, h.to_f64());
    h > x.powf(0.01) && h < x.powf(0.25)
}

/// Loads the squarefull set for `[lo, hi]` from `cache` if it covers the
/// range, otherwise enumerates it and (with a cache path) stores it.
pub fn load_or_enumerate(lo: u64, hi: u64, cache: Option<&Path>) -> Result<SquarefullSet> {
    if let Some(path) = cache {
        let format = CacheFormat::from_path(path);
        if path.exists() {
            let set = read_cache(path, format)?;
            if set.covers(lo, hi) {
                info!("using cache {}", path.display());
                return Ok(set);
            }
            info!("cache {} does not cover [{lo}, {hi}]; rebuilding", path.display());
        }
        let set = SquarefullSet::enumerate(lo, hi)?;
        write_cache(path, &set, format)?;
        return Ok(set);
    }
    SquarefullSet::enumerate(lo, hi)
}

/// One [`VarianceReport`] per admissible `H`, all drawn from one shared
/// enumeration of `(X, (√(2X) + max H)²]`.
pub fn run_variance_grid(
    x: u64,
    h_grid: &[Rational],
    eps: f64,
    lam: f64,
    cache: Option<&Path>,
) -> Result<VarianceGrid> {
    if h_grid.is_empty() {
        return Err(Error::invalid("H grid is empty"));
    }
    let mut configs = vec![];
    let mut skipped = vec![];
    for &h in h_grid {
        if !admissible(x, h) {
            warn!("skipping H = {h}: outside (X^0.01, X^0.25)");
            skipped.push(Skipped {
                h,
                reason: "outside (X^0.01, X^0.25)".into(),
            });
            continue;
        }
        configs.push(ExperimentConfig::new(x, h, eps, lam)?);
    }
    let mut reports = vec![];
    if !configs.is_empty() {
        let hi = configs
            .iter()
            .map(|c| c.upper_end())
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .expect("nonempty");
        let set = load_or_enumerate(x + 1, hi, cache)?;
        reports = configs
            .par_iter()
            .map(|c| variance_report_from(c, &set))
            .collect::<Result<_>>()?;
    }
    let pts: Vec<(f64, f64)> = reports.iter().map(|r| (r.h.to_f64(), r.total)).collect();
    Ok(VarianceGrid {
        slope: loglog_slope(&pts),
        reports,
        skipped,
    })
}

pub fn variance_table(reports: &[VarianceReport]) -> Result<Table> {
    let mut t = Table::new(VARIANCE_COLUMNS);
    for r in reports {
        t.push(vec![
            r.x.to_string(),
            r.h.to_string(),
            format_num(r.total),
            format_num(r.j1),
            format_num(r.j2),
            format_num(r.i2),
            format_num(r.predicted),
            format_num(r.ratio),
            r.event_count.to_string(),
        ])?;
    }
    Ok(t)
}

/// Grid CSV: the variance table followed by a `#slope` comment line.
pub fn grid_csv(grid: &VarianceGrid) -> Result<String> {
    let mut s = variance_table(&grid.reports)?.to_csv();
    match grid.slope {
        Some(v) => s.push_str(&format!("#slope,{}\n", format_num(v))),
        None => s.push_str("#slope,undefined\n"),
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiagonalRow {
    #[serde(rename = "H")]
    pub h: f64,
    pub eps: f64,
    pub value: f64,
    /// `C∞·H^{2/3}`.
    pub predicted: f64,
    pub ratio: f64,
    /// `H^{−ε/6}`, the size of the relative error term.
    pub envelope: f64,
    /// Sinc-zero degeneracy of the `b = 1` layer.
    pub integer_h: bool,
}

pub fn run_diagonal_grid(h_grid: &[f64], eps: f64) -> Result<Vec<DiagonalRow>> {
    if h_grid.is_empty() {
        return Err(Error::invalid("H grid is empty"));
    }
    let c = c_infinity();
    h_grid
        .iter()
        .map(|&h| {
            let p = DiagonalParams::new(h, eps)?;
            let value = diagonal_sum(&p)?;
            let predicted = c * h.powf(2.0 / 3.0);
            Ok(DiagonalRow {
                h,
                eps,
                value,
                predicted,
                ratio: value / predicted,
                envelope: h.powf(-eps / 6.0),
                integer_h: p.is_integer_h(),
            })
        })
        .collect()
}

pub fn diagonal_table(rows: &[DiagonalRow]) -> Result<Table> {
    let mut t = Table::new(DIAGONAL_COLUMNS);
    for r in rows {
        t.push(vec![
            format_num(r.h),
            format_num(r.eps),
            format_num(r.value),
            format_num(r.predicted),
            format_num(r.ratio),
            format_num(r.envelope),
            r.integer_h.to_string(),
        ])?;
    }
    Ok(t)
}

/// Columns `log_H, log_variance, log_predicted`, one row per report in
/// input order.
pub fn plotdata_table(reports: &[VarianceReport]) -> Result<Table> {
    if reports.is_empty() {
        return Err(Error::invalid("no results to plot"));
    }
    let mut t = Table::new(PLOT_COLUMNS);
    for r in reports {
        t.push(vec![
            format_num(r.h.to_f64().ln()),
            format_num(r.total.ln()),
            format_num(r.predicted.ln()),
        ])?;
    }
    Ok(t)
}

pub fn emit_plotdata(reports: &[VarianceReport], path: &Path) -> Result<()> {
    let t = plotdata_table(reports)?;
    super::output::write_output(Some(path), &t.to_csv())
}

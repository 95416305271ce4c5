//! Command line and experiment orchestration.
//!
//! Subcommands: `count`, `enumerate`, `variance`, `diagonal`, `constants`,
//! `verify` and `grid`. Tables go to `--out` (or stdout) as CSV or JSON with
//! 12 significant digits. Exit codes: 0 success, 1 a check failed, 2 bad
//! configuration or any other error.

mod grid;
mod output;

pub use grid::{
    admissible, diagonal_table, emit_plotdata, grid_csv, load_or_enumerate, loglog_slope, plotdata_table,
    run_diagonal_grid, run_variance_grid, variance_table, DiagonalRow, ManifestConfig, RunManifest, Skipped,
    VarianceGrid,
};
pub use output::{
    format_num, json_lines, round12, round_json, to_json_line, to_json_pretty, write_output, Table,
    CONSTANT_COLUMNS, COUNT_BG_COLUMNS, COUNT_COLUMNS, DIAGONAL_COLUMNS, ENUMERATE_COLUMNS, PLOT_COLUMNS,
    VARIANCE_COLUMNS, VARIANCE_SPLIT_COLUMNS,
};

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::info;

use crate::analytic_checks::{run_suite, Suite};
use crate::asymptotics::{c_infinity_from, sinc_moment_with, SincMomentConfig, ZetaConstants};
use crate::counting::{count_result, count_upto};
use crate::exactmath::{write_cache, CacheFormat, SquarefullSet};
use crate::quad::QuadConfig;
use crate::sweep::{variance_report_from, ExperimentConfig};
use crate::{Error, Rational, Result};

pub const THREADS_ENV: &str = "SQUAREFULL_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "squarefull", version, about = "Squarefull numbers in short intervals")]
pub struct Cli {
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Table format [default: json for `constants`, csv otherwise].
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Enumeration cache; `.csv` selects the text format, anything else binary.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Worker threads [env: SQUAREFULL_THREADS, default 1].
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Quadrature tolerance for `constants`.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Q(x), optionally with the two-term approximation.
    Count {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        bg: bool,
    },
    /// Squarefull numbers in [lo, hi] as `a,b,n`.
    Enumerate {
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
    },
    /// Exact variance over [X, 2X] with its b-range split.
    Variance {
        #[arg(long = "X")]
        x: u64,
        #[arg(long = "H")]
        h: Rational,
        #[arg(long, default_value_t = 0.005)]
        eps: f64,
        #[arg(long, default_value_t = 2.0 / 9.0 - 0.005 / 3.0)]
        lam: f64,
        /// Add I1, cross_bound and the θ₁H-centred total.
        #[arg(long)]
        splits: bool,
    },
    /// Diagonal sums against C∞·H^{2/3}.
    Diagonal {
        #[arg(long = "H", num_args = 1.., required = true)]
        h: Vec<f64>,
        #[arg(long, default_value_t = 0.005)]
        eps: f64,
    },
    /// Zeta values and derived constants.
    Constants,
    /// Numeric checks; JSON lines, exit 1 on any failure.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Option<Suite>,
    },
    /// Variance reports over an H grid plus the log-log slope.
    Grid {
        #[arg(long = "X")]
        x: u64,
        #[arg(long = "H", num_args = 1.., required = true)]
        h: Vec<Rational>,
        #[arg(long, default_value_t = 0.005)]
        eps: f64,
        #[arg(long, default_value_t = 2.0 / 9.0 - 0.005 / 3.0)]
        lam: f64,
        /// Also write gnuplot columns here.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a command produced: its text and whether its checks passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn threads(cli: &Cli) -> Result<usize> {
    let n = match (cli.threads, std::env::var(THREADS_ENV)) {
        (Some(n), _) => n,
        (None, Ok(v)) => v
            .parse::<usize>()
            .map_err(|_| Error::invalid(format!("{THREADS_ENV}={v:?} is not a thread count")))?,
        (None, Err(_)) => 1,
    };
    if n == 0 {
        return Err(Error::invalid("thread count must be at least 1"));
    }
    Ok(n)
}

fn render(table: &Table, format: Format) -> Result<String> {
    match format {
        Format::Csv => Ok(table.to_csv()),
        Format::Json => table.to_json(),
    }
}

fn count_cmd(x: u64, bg: bool, format: Format) -> Result<Outcome> {
    let table = if bg {
        let r = count_result(x);
        let mut t = Table::new(COUNT_BG_COLUMNS);
        t.push(vec![r.x.to_string(), r.q.to_string(), format_num(r.bg2), format_num(r.err)])?;
        t
    } else {
        let mut t = Table::new(COUNT_COLUMNS);
        t.push(vec![x.to_string(), count_upto(x).to_string()])?;
        t
    };
    Ok(Outcome::ok(render(&table, format)?))
}

fn enumerate_cmd(lo: u64, hi: u64, cache: Option<&Path>, format: Format) -> Result<Outcome> {
    let set = SquarefullSet::enumerate(lo, hi)?;
    if let Some(path) = cache {
        write_cache(path, &set, CacheFormat::from_path(path))?;
        info!("wrote {} entries to {}", set.reps().len(), path.display());
    }
    let mut t = Table::new(ENUMERATE_COLUMNS);
    for r in set.reps() {
        t.push(vec![r.a.to_string(), r.b.to_string(), r.n.to_string()])?;
    }
    Ok(Outcome::ok(render(&t, format)?))
}

fn variance_cmd(cfg: ExperimentConfig, splits: bool, cache: Option<&Path>, format: Format) -> Result<Outcome> {
    let set = load_or_enumerate(cfg.x + 1, cfg.upper_end()?, cache)?;
    let r = variance_report_from(&cfg, &set)?;
    if format == Format::Json {
        return Ok(Outcome::ok(to_json_pretty(&r)?));
    }
    let mut row = variance_table(std::slice::from_ref(&r))?.rows()[0].clone();
    let table = if splits {
        row.extend([
            format_num(r.i1),
            format_num(r.cross_bound),
            format_num(r.diagnostics.total_theta1_mean),
        ]);
        let mut t = Table::new(VARIANCE_SPLIT_COLUMNS);
        t.push(row)?;
        t
    } else {
        variance_table(std::slice::from_ref(&r))?
    };
    Ok(Outcome::ok(table.to_csv()))
}

fn constants_cmd(tolerance: Option<f64>, format: Format) -> Result<Outcome> {
    let mut c = *ZetaConstants::global();
    if let Some(tol) = tolerance {
        if !(tol > 0.0) {
            return Err(Error::invalid(format!("tolerance {tol} must be positive")));
        }
        let cfg = SincMomentConfig {
            quad: QuadConfig::with_tolerance(tol, tol),
            ..SincMomentConfig::default()
        };
        c.sinc_moment = sinc_moment_with(&cfg)?;
        c.c_inf = c_infinity_from(c.z43, c.z2, c.sinc_moment);
    }
    match format {
        Format::Json => Ok(Outcome::ok(to_json_pretty(&c)?)),
        Format::Csv => {
            let mut t = Table::new(CONSTANT_COLUMNS);
            for (name, v) in [
                ("z32", c.z32),
                ("z3", c.z3),
                ("z23", c.z23),
                ("z2", c.z2),
                ("z43", c.z43),
                ("theta1", c.theta1),
                ("theta2", c.theta2),
                ("sinc_moment", c.sinc_moment),
                ("c_inf", c.c_inf),
            ] {
                t.push(vec![name.to_string(), format_num(v)])?;
            }
            Ok(Outcome::ok(t.to_csv()))
        }
    }
}

fn verify_cmd(suite: Option<Suite>) -> Result<Outcome> {
    let suites: Vec<Suite> = suite.map_or(Suite::ALL.to_vec(), |s| vec![s]);
    let mut records = vec![];
    for s in suites {
        info!("running suite {s}");
        records.extend(run_suite(s)?);
    }
    Ok(Outcome {
        passed: records.iter().all(|r| r.pass),
        text: json_lines(&records)?,
    })
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

#[allow(clippy::too_many_arguments)]
fn grid_cmd(
    x: u64,
    hs: &[Rational],
    eps: f64,
    lam: f64,
    plot: Option<&Path>,
    cli: &Cli,
    format: Format,
    threads: usize,
) -> Result<Outcome> {
    let mut manifest = RunManifest::start(
        "grid",
        ManifestConfig {
            x: Some(x),
            h_grid: hs.iter().map(|h| h.to_string()).collect(),
            eps,
            lam: Some(lam),
            tolerance: cli.tolerance,
            seed: None,
            threads,
        },
    );
    let grid = run_variance_grid(x, hs, eps, lam, cli.cache.as_deref())?;
    if let Some(p) = plot {
        emit_plotdata(&grid.reports, p)?;
        manifest.outputs.push(p.to_path_buf());
    }
    let text = match format {
        Format::Csv => grid_csv(&grid)?,
        Format::Json => to_json_pretty(&grid)?,
    };
    if let Some(out) = &cli.out {
        manifest.outputs.push(out.clone());
        manifest.cache_paths.extend(cli.cache.clone());
        manifest.finish();
        write_output(Some(&manifest_path(out)), &to_json_pretty(&manifest)?)?;
    }
    Ok(Outcome::ok(text))
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let threads = threads(cli)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    let format = cli.format.unwrap_or(match cli.command {
        Command::Constants => Format::Json,
        _ => Format::Csv,
    });
    pool.install(|| match &cli.command {
        Command::Count { x, bg } => count_cmd(*x, *bg, format),
        Command::Enumerate { lo, hi } => enumerate_cmd(*lo, *hi, cli.cache.as_deref(), format),
        Command::Variance { x, h, eps, lam, splits } => {
            let cfg = ExperimentConfig::new(*x, *h, *eps, *lam)?;
            variance_cmd(cfg, *splits, cli.cache.as_deref(), format)
        }
        Command::Diagonal { h, eps } => {
            let rows = run_diagonal_grid(h, *eps)?;
            Ok(Outcome::ok(render(&diagonal_table(&rows)?, format)?))
        }
        Command::Constants => constants_cmd(cli.tolerance, format),
        Command::Verify { suite } => verify_cmd(*suite),
        Command::Grid { x, h, eps, lam, plot } => grid_cmd(*x, h, *eps, *lam, plot.as_deref(), cli, format, threads),
    })
}

/// Entry point of the `squarefull` binary.
pub fn run() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(&cli).and_then(|o| write_output(cli.out.as_deref(), &o.text).map(|_| o.passed)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! Exact counting and short-interval variance experiments for squarefull
//! (powerful) numbers.
//!
//! Every squarefull `n` factors uniquely as `n = a²·b³` with `b` squarefree.
//! The crate is layered bottom-up:
//!
//! * [`exactmath`]: integer roots, a segmented squarefree sieve and the
//!   `(a, b)` enumeration of squarefull numbers, plus the enumeration cache.
//! * [`counting`]: `Q(x)`, interval counts over `(x, (√x + H)²]` and the
//!   two-term Bateman–Grosswald approximation.
//! * [`sweep`]: the variance integral over `[X, 2X]` evaluated exactly by
//!   sweeping the breakpoints of the step integrand, split by ranges of `b`.
//! * [`asymptotics`]: real zeta values, the sinc moment, the constant `C∞`
//!   and the diagonal sums that predict the `H^{2/3}` law.
//! * [`analytic_checks`]: numeric checks of the sawtooth identities,
//!   Dirichlet polynomial mean values, Process B and zeta on the critical
//!   line.
//! * [`cli`]: grid orchestration, report emission and the command line.

pub mod analytic_checks;
pub mod asymptotics;
pub mod cli;
pub mod counting;
pub mod dd;
mod error;
pub mod exactmath;
pub mod quad;
pub mod rational;
pub mod sweep;

pub use error::{Error, Result};
pub use rational::Rational;

//! Numeric checks of the sawtooth machinery, Dirichlet polynomial mean
//! values, Process B and zeta on the critical line.
//!
//! Nothing here proves anything. Each check computes both sides of an
//! identity or an inequality at desk scale and reports how close they are.

mod critical;
mod dirichlet;
mod process_b;
mod psi;
mod suites;

pub use critical::{fourth_moment, subconvexity_scan, zeta_critical, FourthMoment, SubconvexityScan, CRITICAL_T_MAX};
pub use dirichlet::{
    dirichlet_eval, large_value_histogram, m_poly_envelope, m_poly_scan, m_plain_at_zero, m_poly_eval,
    mean_value_check, DirichletPoly, EnvelopeFit, LargeValues, MFlavor, MeanValue,
};
pub use process_b::{process_b_check, ExpSumSpec, ProcessB};
pub use psi::{counting_identity_check, dist_to_integer, psi, psi_fourier, psi_fourier_envelope, EnvelopeScan};
pub use suites::{identity_instances, identity_max_residual, random_poly, run_suite, CheckRecord, Suite};

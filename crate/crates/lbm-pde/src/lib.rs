//! Equivalent equations of a lattice Boltzmann scheme up to second order:
//! first-order fluxes, the second-order flux form, and residuals against the
//! Euler and Navier-Stokes targets.

mod analyze;
mod flux;
mod gamma2;
mod residual;
mod viscosity;

pub use analyze::{analyze, analyze_all, analyze_builtin, load_builtin, Analysis};
pub use flux::{euler_flux, first_order_fluxes, FirstOrderSystem};
pub use gamma2::{psi1, second_order_form};
pub use residual::{
    discrepancy_extract, euler_residual, navier_stokes_residual, viscous_target, Cells, Discrepancy, ResidualReport,
};
pub use viscosity::{viscosity_table, ViscosityMap};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PdeError {
    #[error(transparent)]
    Scheme(#[from] lbm_scheme::SchemeError),
    #[error(transparent)]
    Moments(#[from] lbm_moments::MomentError),
    #[error(transparent)]
    Equilibria(#[from] lbm_equilibria::EqError),
    #[error("no viscosity formulas for scheme `{0}`")]
    NoViscosity(String),
    #[error("moment row {0} has no relaxation symbol")]
    MissingSigma(usize),
    #[error("`{0}` has no variant `{1}`")]
    UnknownVariant(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

#[cfg(feature = "parallel")]
pub(crate) fn map_range<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range<T>(n: usize, f: impl Fn(usize) -> T) -> Vec<T> {
    (0..n).map(f).collect()
}

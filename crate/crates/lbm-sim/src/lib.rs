//! Multiple-relaxation-time lattice Boltzmann simulator on periodic grids.
//! Collision runs in moment space with float copies of the exact moment
//! matrices; streaming is an exact periodic shift.

mod config;
mod experiment;
mod lattice;

pub use config::{parse_config, Experiment, SimConfig, MAX_AMPLITUDE};
pub use experiment::{fit_exponential, predicted_nu, run_experiment, series_csv, Fit, MeasurementReport, Sample};
pub use lattice::{CompiledPoly, Lattice, LatticeState, MacroFields};
pub use lbm_pde::Exec;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("relaxation rate out of (0,2): {symbol} gives s = {value}")]
    Rate { symbol: String, value: f64 },
    #[error("{0}")]
    Grid(String),
    #[error("experiment incompatible with model: {0}")]
    Incompatible(String),
    #[error("nonpositive density in cell {cell} at step {time}")]
    NonPositiveDensity { cell: usize, time: usize },
    #[error("non-finite population at step {time}")]
    NonFinite { time: usize },
    #[error("fit failed: {0}")]
    Fit(String),
    #[error(transparent)]
    Pde(#[from] lbm_pde::PdeError),
}

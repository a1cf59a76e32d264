//! Equilibrium families of the built-in schemes, the target fluid models,
//! the primitive/conserved variable maps and the exact Jacobian of the
//! equilibria with respect to the conserved moments.

mod jacobian;
mod model;
mod set;
mod varmap;

pub use jacobian::jacobian_conserved;
pub use model::FluidModel;
pub use set::{dump_equilibria, equilibria_source, equilibrium_family, parse_equilibria, EquilibriumSet, Pair};
pub use varmap::VariableMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EqError {
    #[error("no equilibria for scheme `{0}`")]
    Unsupported(String),
    #[error("line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("equilibrium file is for `{0}`, scheme is `{1}`")]
    SchemeMismatch(String, String),
    #[error("equilibrium of `{0}` is not divisible by rho")]
    NotDivisible(String),
    #[error("equilibria of `{0}` have no variant `{1}`")]
    UnknownVariant(String, String),
}

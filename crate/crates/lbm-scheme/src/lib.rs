//! Lattice schemes: velocity sets, moment polynomial bases and the
//! grouping metadata consumed by the analysis, plus a registry of
//! built-in schemes and a plain-text descriptor format.

mod builtin;
mod def;
mod descriptor;
mod validate;
mod vel;

pub use builtin::{builtin, builtin_names, builtin_source, builtin_variant};
pub use def::{Group, Model, Moment, SchemeDef};
pub use descriptor::{dump, parse_scheme};
pub use validate::{validate_scheme, ValidationReport};
pub use vel::{Vel, VelPoly};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("invalid scheme: {0}")]
    Invalid(String),
    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),
    #[error("scheme `{0}` has no variant `{1}`")]
    UnknownVariant(String, String),
}

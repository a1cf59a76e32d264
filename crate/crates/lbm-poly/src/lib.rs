//! Exact arithmetic substrate: rationals, sparse Laurent polynomials over a
//! fixed variable set, first/second order differential forms, and
//! fraction-free matrix inversion.

mod forms;
mod matrix;
mod parse;
mod poly;
mod rational;
mod vars;

pub use forms::{FirstOrderForm, SecondOrderFluxForm};
pub use matrix::{MatrixError, RatMatrix};
pub use parse::{parse_poly, ParseError};
pub use poly::{Mono, Poly, PolyError, MAX_VARS};
pub use rational::{int, parse_rational, rat, Rational};
pub use vars::{Sym, Vars};

/// Polynomial over the canonical analysis symbols.
pub type SymPoly = Poly<Sym>;

use lbm_poly::{int, parse_poly, rat, Rational, Sym, SymPoly};
use lbm_scheme::SchemeDef;

use crate::PdeError;

/// Viscosities of a scheme, per time step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViscosityMap {
    pub mu: SymPoly,
    pub zeta: SymPoly,
    /// Prandtl number; `None` for isothermal schemes.
    pub prandtl: Option<Rational>,
    /// Sigma identifications `(from, to)` the scheme needs.
    pub constraints: Vec<(Sym, Sym)>,
}

impl ViscosityMap {
    /// Multiplier of `mu` removed from the trace part of `tau`.
    pub fn bulk_shift(&self, dim: usize) -> Rational {
        if dim == 2 {
            int(1)
        } else {
            rat(2, 3)
        }
    }

    /// Applies the sigma identifications to `p`.
    pub fn constrain(&self, p: &SymPoly) -> SymPoly {
        self.constraints
            .iter()
            .fold(p.clone(), |acc, &(from, to)| acc.subs(from, &SymPoly::var(to)).expect("sigma substitution"))
    }
}

fn p(s: &str) -> SymPoly {
    parse_poly(s).expect("built-in viscosity formula")
}

fn iso(mu: &str, zeta: &str) -> ViscosityMap {
    ViscosityMap { mu: p(mu), zeta: p(zeta), prandtl: None, constraints: Vec::new() }
}

fn thermal(mu: &str, zeta: &str, pr: i64) -> ViscosityMap {
    ViscosityMap { mu: p(mu), zeta: p(zeta), prandtl: Some(int(pr)), constraints: vec![(Sym::SigmaQ, Sym::SigmaX)] }
}

/// Viscosities of the built-in schemes, keyed by scheme name.
pub fn viscosity_table(s: &SchemeDef) -> Result<ViscosityMap, PdeError> {
    Ok(match s.name() {
        "d2q9-iso" => iso("lambda^2/3*rho*sigma_x", "lambda^2/3*rho*sigma_e"),
        "d3q19-iso" | "d3q27-iso" => iso("lambda^2/3*rho*sigma_x", "2/9*lambda^2*rho*sigma_e"),
        "d2q13-iso" => iso("rho*sigma_x*cs^2", "rho*sigma_e*cs^2"),
        "d3q33-iso" | "d3q27-2-iso" => iso("rho*sigma_x*cs^2", "2/3*rho*sigma_e*cs^2"),
        "d2q13-th" => thermal("2*rho*e*sigma_x", "2*rho*e*sigma_x", 2),
        "d2q17-th" | "d2v17-th" | "d2w17-th" => thermal("rho*e*sigma_x", "0", 1),
        "d3q33-th" | "d3q27-2-th" => thermal("2/3*rho*e*sigma_x", "0", 1),
        other => return Err(PdeError::NoViscosity(other.to_string())),
    })
}

use lbm_poly::{int, rat, Rational, Sym, SymPoly};
use lbm_scheme::{Model, SchemeDef};

/// Pressure law and variable lists of the target fluid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FluidModel {
    pub kind: Model,
    pub dim: usize,
    /// Ratio of specific heats (thermal only).
    pub gamma: Option<Rational>,
    /// `(a, b)` with `eps = a E + b lambda^2 rho` (thermal only).
    pub energy: Option<(Rational, Rational)>,
}

impl FluidModel {
    pub fn for_scheme(s: &SchemeDef) -> Self {
        let gamma = match (s.model(), s.dim()) {
            (Model::Isothermal, _) => None,
            (Model::Thermal, 2) => Some(int(2)),
            (Model::Thermal, _) => Some(rat(5, 3)),
        };
        FluidModel { kind: s.model(), dim: s.dim(), gamma, energy: s.energy().cloned() }
    }

    pub fn thermal(&self) -> bool {
        self.kind == Model::Thermal
    }

    /// Primitive variables `V = (rho, u, v[, w][, e])`.
    pub fn primitives(&self) -> Vec<Sym> {
        let mut v = vec![Sym::Rho];
        v.extend((0..self.dim).map(Sym::velocity));
        if self.thermal() {
            v.push(Sym::E);
        }
        v
    }

    pub fn n_fields(&self) -> usize {
        self.dim + if self.thermal() { 2 } else { 1 }
    }

    /// `p = cs^2 rho` or `p = (gamma - 1) rho e`.
    pub fn pressure(&self) -> SymPoly {
        let rho = SymPoly::var(Sym::Rho);
        match &self.gamma {
            None => SymPoly::var(Sym::Cs).pow(2) * rho,
            Some(g) => (rho * SymPoly::var(Sym::E)).scale(&(g - int(1))),
        }
    }

    /// Squared velocity magnitude.
    pub fn speed2(&self) -> SymPoly {
        (0..self.dim).map(|a| SymPoly::var(Sym::velocity(a)).pow(2)).fold(SymPoly::zero(), |acc, t| acc + t)
    }

    /// Total energy density `E = rho |u|^2 / 2 + rho e`.
    pub fn total_energy(&self) -> SymPoly {
        let rho = SymPoly::var(Sym::Rho);
        (&rho * &self.speed2()).scale(&rat(1, 2)) + rho * SymPoly::var(Sym::E)
    }
}

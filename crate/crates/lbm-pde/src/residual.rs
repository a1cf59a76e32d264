use std::collections::BTreeMap;

use lbm_equilibria::FluidModel;
use lbm_poly::{FirstOrderForm, SecondOrderFluxForm, Sym, SymPoly};

use crate::flux::{euler_flux, FirstOrderSystem};
use crate::viscosity::ViscosityMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cells {
    /// Nonzero `(i, a)` flux residuals.
    First(BTreeMap<(usize, usize), SymPoly>),
    /// Residual coefficients of `d_b [ c d_a V_k ]` in equation `i`.
    Second(SecondOrderFluxForm),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    pub cells: Cells,
    /// Sigma identifications applied before comparison, `(from, to)`.
    pub constraints: Vec<(Sym, Sym)>,
}

impl ResidualReport {
    pub fn order(&self) -> u8 {
        match self.cells {
            Cells::First(_) => 1,
            Cells::Second(_) => 2,
        }
    }

    pub fn unsolved(&self) -> usize {
        match &self.cells {
            Cells::First(m) => m.len(),
            Cells::Second(f) => f.nonzero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.unsolved() == 0
    }

    /// Order-2 residual form; `None` for an Euler report.
    pub fn second(&self) -> Option<&SecondOrderFluxForm> {
        match &self.cells {
            Cells::Second(f) => Some(f),
            Cells::First(_) => None,
        }
    }

    pub fn first(&self) -> Option<&BTreeMap<(usize, usize), SymPoly>> {
        match &self.cells {
            Cells::First(m) => Some(m),
            Cells::Second(_) => None,
        }
    }
}

/// `F_i^a - (Euler flux)_i^a` for every cell.
pub fn euler_residual(sys: &FirstOrderSystem, model: &FluidModel, cs2: Option<&SymPoly>) -> ResidualReport {
    let mut cells = BTreeMap::new();
    for i in 0..sys.n() {
        for a in 0..sys.dim() {
            let r = sys.flux(i, a) - &euler_flux(model, cs2, i, a);
            if !r.is_zero() {
                cells.insert((i, a), r);
            }
        }
    }
    ResidualReport { cells: Cells::First(cells), constraints: Vec::new() }
}

/// Viscous stress `tau_ib` as a form in `d_a V_k`; velocity `j` is field `1 + j`.
fn tau(dim: usize, vis: &ViscosityMap, i: usize, b: usize) -> FirstOrderForm {
    let mut t = FirstOrderForm::new();
    t.add(1 + i, b, &vis.mu);
    t.add(1 + b, i, &vis.mu);
    if i == b {
        let c = &vis.zeta - &vis.mu.scale(&vis.bulk_shift(dim));
        for k in 0..dim {
            t.add(1 + k, k, &c);
        }
    }
    t
}

/// Navier-Stokes viscous flux of equation `i` (`i >= 1`) in direction `b`,
/// per time step.
pub fn viscous_target(model: &FluidModel, vis: &ViscosityMap, i: usize, b: usize) -> FirstOrderForm {
    let dim = model.dim;
    if i <= dim {
        return tau(dim, vis, i - 1, b);
    }
    let (ea, _) = model.energy.as_ref().expect("energy row needs an energy map");
    let mut t = FirstOrderForm::new();
    for j in 0..dim {
        let uj = SymPoly::var(Sym::velocity(j));
        for (k, a, c) in tau(dim, vis, j, b).iter() {
            t.add(k, a, &(&uj * c));
        }
    }
    let gamma = model.gamma.as_ref().expect("thermal model has gamma");
    let pr = vis.prandtl.as_ref().expect("thermal viscosity map has a Prandtl number");
    t.add(dim + 1, b, &vis.mu.scale(&(gamma / pr)));
    t.map(|c| c.scale(ea))
}

/// Residual `(-Gamma2) - target` per cell, equations `1..N`.
pub fn navier_stokes_residual(g2: &SecondOrderFluxForm, model: &FluidModel, vis: &ViscosityMap) -> ResidualReport {
    let n = model.n_fields();
    let mut out = SecondOrderFluxForm::new();
    for i in 1..n {
        for b in 0..model.dim {
            let mut cell = g2.get(i, b).map(|c| -c);
            cell = cell.sub(&viscous_target(model, vis, i, b));
            out.set(i, b, cell);
        }
    }
    ResidualReport { cells: Cells::Second(out), constraints: vis.constraints.clone() }
}

/// Discrepancy tensor `R = -residual`, grouped by `(i, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub dim: usize,
    pub entries: BTreeMap<(usize, usize), FirstOrderForm>,
}

impl Discrepancy {
    pub fn get(&self, i: usize, b: usize) -> FirstOrderForm {
        self.entries.get(&(i, b)).cloned().unwrap_or_default()
    }

    /// Coefficient of `d_a V_k` in `R_ib`.
    pub fn coeff(&self, i: usize, b: usize, k: usize, a: usize) -> SymPoly {
        self.entries.get(&(i, b)).map(|f| f.get(k, a)).unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `R_(1+i) b == R_(1+b) i` over the momentum block.
    pub fn momentum_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|b| self.get(1 + i, b) == self.get(1 + b, i)))
    }
}

pub fn discrepancy_extract(report: &ResidualReport, dim: usize) -> Option<Discrepancy> {
    let form = report.second()?;
    let mut entries = BTreeMap::new();
    for (i, b, k, a, c) in form.cells() {
        entries.entry((i, b)).or_insert_with(FirstOrderForm::new).add(k, a, &-c);
    }
    Some(Discrepancy { dim, entries })
}

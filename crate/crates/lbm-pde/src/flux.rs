use lbm_equilibria::{EquilibriumSet, FluidModel, VariableMap};
use lbm_moments::{AbcdBlocks, Block};
use lbm_poly::{Sym, SymPoly};

/// `d_t W_i + sum_a d_a F_i^a = 0`, fluxes as polynomials in the primitives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrderSystem {
    dim: usize,
    flux: Vec<Vec<SymPoly>>,
}

impl FirstOrderSystem {
    pub fn n(&self) -> usize {
        self.flux.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `F_i^a`.
    pub fn flux(&self, i: usize, a: usize) -> &SymPoly {
        &self.flux[i][a]
    }
}

/// `F^a = A^a W + B^a Phi(W)`.
pub fn first_order_fluxes(blocks: &AbcdBlocks, eq: &EquilibriumSet, vm: &VariableMap) -> FirstOrderSystem {
    let n = blocks.n();
    let r = blocks.q() - n;
    let dim = blocks.dim();
    let flux = (0..n)
        .map(|i| {
            (0..dim)
                .map(|a| {
                    let mut f = SymPoly::zero();
                    for k in 0..n {
                        f += &(&blocks.poly(Block::A, a, i, k) * vm.conserved(k));
                    }
                    for m in 0..r {
                        let b = blocks.poly(Block::B, a, i, m);
                        if !b.is_zero() {
                            f += &(&b * eq.get(n + m));
                        }
                    }
                    f
                })
                .collect()
        })
        .collect();
    FirstOrderSystem { dim, flux }
}

/// Euler flux of conserved field `i` in direction `a`. `cs2` replaces
/// `cs^2` in the isothermal pressure when the scheme fixes the sound speed.
pub fn euler_flux(model: &FluidModel, cs2: Option<&SymPoly>, i: usize, a: usize) -> SymPoly {
    let rho = SymPoly::var(Sym::Rho);
    let ua = SymPoly::var(Sym::velocity(a));
    let mut p = model.pressure();
    if let Some(c) = cs2 {
        p = p.subs_square(Sym::Cs, c).expect("pressure is even in cs");
    }
    if i == 0 {
        return &rho * &ua;
    }
    if i <= model.dim {
        let mut f = &(&rho * &SymPoly::var(Sym::velocity(i - 1))) * &ua;
        if i - 1 == a {
            f += &p;
        }
        return f;
    }
    let (ea, eb) = model.energy.as_ref().expect("energy row needs an energy map");
    let lam2 = SymPoly::var(Sym::Lambda).pow(2);
    (&(model.total_energy() + &p) * &ua).scale(ea) + (&(&lam2 * &rho) * &ua).scale(eb)
}

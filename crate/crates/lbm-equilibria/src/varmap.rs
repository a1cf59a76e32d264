use lbm_poly::{int, Sym, SymPoly};

use crate::FluidModel;

/// Conserved fields as polynomials in the primitives, with the
/// chain-rule tables in both directions.
#[derive(Clone, Debug)]
pub struct VariableMap {
    prims: Vec<Sym>,
    w: Vec<SymPoly>,
    dw_dv: Vec<Vec<SymPoly>>,
    rho_dv_dw: Vec<Vec<SymPoly>>,
}

fn lambda2() -> SymPoly {
    SymPoly::var(Sym::Lambda).pow(2)
}

impl VariableMap {
    pub fn new(model: &FluidModel) -> Self {
        let prims = model.primitives();
        let n = prims.len();
        let rho = SymPoly::var(Sym::Rho);
        let vel: Vec<SymPoly> = (0..model.dim).map(|a| SymPoly::var(Sym::velocity(a))).collect();

        let mut w = vec![rho.clone()];
        w.extend(vel.iter().map(|u| &rho * u));
        if let Some((a, b)) = &model.energy {
            w.push(model.total_energy().scale(a) + (&lambda2() * &rho).scale(b));
        }
        let dw_dv = w.iter().map(|wi| prims.iter().map(|&v| wi.derivative(v)).collect()).collect();

        // rho * dV/dW in closed form.
        let mut k = vec![vec![SymPoly::zero(); n]; n];
        k[0][0] = rho.clone();
        for (a, u) in vel.iter().enumerate() {
            k[1 + a][0] = -u;
            k[1 + a][1 + a] = SymPoly::one();
        }
        if let Some((a, b)) = &model.energy {
            let e = n - 1;
            let inv_a = int(1) / a;
            k[e][0] = model.speed2().scale(&(int(1) / int(2))) - SymPoly::var(Sym::E) - lambda2().scale(&(b * &inv_a));
            for (d, u) in vel.iter().enumerate() {
                k[e][1 + d] = -u;
            }
            k[e][e] = SymPoly::constant(inv_a);
        }
        let vm = VariableMap { prims, w, dw_dv, rho_dv_dw: k };
        debug_assert!(vm.inverse_is_consistent());
        vm
    }

    pub fn primitives(&self) -> &[Sym] {
        &self.prims
    }

    pub fn n(&self) -> usize {
        self.prims.len()
    }

    /// `W_i(V)`.
    pub fn conserved(&self, i: usize) -> &SymPoly {
        &self.w[i]
    }

    /// `dW_i / dV_k`, so that `d_a W_i = sum_k chain(i, k) d_a V_k`.
    pub fn chain(&self, i: usize, k: usize) -> &SymPoly {
        &self.dw_dv[i][k]
    }

    /// `rho * dV_k / dW_i`.
    pub fn rho_dv_dw(&self, k: usize, i: usize) -> &SymPoly {
        &self.rho_dv_dw[k][i]
    }

    /// `(rho dV/dW) (dW/dV) = rho I`.
    pub fn inverse_is_consistent(&self) -> bool {
        let n = self.n();
        let rho = SymPoly::var(Sym::Rho);
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s = (0..n).fold(SymPoly::zero(), |acc, l| acc + &self.rho_dv_dw[i][l] * &self.dw_dv[l][j]);
                s == if i == j { rho.clone() } else { SymPoly::zero() }
            })
        })
    }
}

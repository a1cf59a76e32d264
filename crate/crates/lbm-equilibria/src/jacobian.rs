use lbm_poly::{Sym, SymPoly};

use crate::{EqError, EquilibriumSet, VariableMap};

/// `dPhi_m / dW_i` for every nonconserved row `m` (indexed from 0) and
/// conserved field `i`, as polynomials in the primitives. Computed as
/// `(dPhi/dV) (rho dV/dW) / rho` with exact division.
pub fn jacobian_conserved(eq: &EquilibriumSet, vm: &VariableMap) -> Result<Vec<Vec<SymPoly>>, EqError> {
    let rho = SymPoly::var(Sym::Rho);
    let prims = vm.primitives();
    let n = vm.n();
    eq.iter()
        .map(|(_, name, phi)| {
            let grad: Vec<SymPoly> = prims.iter().map(|&v| phi.derivative(v)).collect();
            (0..n)
                .map(|i| {
                    let num = (0..n).fold(SymPoly::zero(), |acc, l| acc + &grad[l] * vm.rho_dv_dw(l, i));
                    num.div_exact(&rho).map_err(|_| EqError::NotDivisible(name.to_string()))
                })
                .collect()
        })
        .collect()
}

use lbm_equilibria::{jacobian_conserved, EquilibriumSet, VariableMap};
use lbm_moments::{AbcdBlocks, Block};
use lbm_poly::{FirstOrderForm, SecondOrderFluxForm, Sym, SymPoly};

use crate::flux::FirstOrderSystem;
use crate::{map_range, PdeError};

/// `Psi1_m = dPhi_m/dW . Gamma1 - (C W + D Phi)_m` for every nonconserved
/// row, written as forms in `d_a V_l`.
pub fn psi1(
    blocks: &AbcdBlocks,
    eq: &EquilibriumSet,
    vm: &VariableMap,
    sys: &FirstOrderSystem,
) -> Result<Vec<FirstOrderForm>, PdeError> {
    let n = blocks.n();
    let r = blocks.q() - n;
    let dim = blocks.dim();
    let prims = vm.primitives();
    let jac = jacobian_conserved(eq, vm)?;
    let dflux: Vec<Vec<Vec<SymPoly>>> = (0..n)
        .map(|i| (0..dim).map(|a| prims.iter().map(|&v| sys.flux(i, a).derivative(v)).collect()).collect())
        .collect();
    let dphi: Vec<Vec<SymPoly>> = (0..r).map(|m| prims.iter().map(|&v| eq.get(n + m).derivative(v)).collect()).collect();

    Ok(map_range(r, |m| {
        let mut form = FirstOrderForm::new();
        for a in 0..dim {
            for l in 0..prims.len() {
                let mut t = SymPoly::zero();
                for i in 0..n {
                    if !jac[m][i].is_zero() {
                        t += &(&jac[m][i] * &dflux[i][a][l]);
                    }
                }
                for k in 0..n {
                    let c = blocks.poly(Block::C, a, m, k);
                    if !c.is_zero() {
                        t -= &(&c * vm.chain(k, l));
                    }
                }
                for (nn, dp) in dphi.iter().enumerate() {
                    let d = blocks.poly(Block::D, a, m, nn);
                    if !d.is_zero() {
                        t -= &(&d * &dp[l]);
                    }
                }
                form.add(l, a, &t);
            }
        }
        form
    }))
}

/// `Gamma2 = B Sigma Psi1` with the sigma symbol of each nonconserved row
/// (`sigma[m]` indexed by moment row) and the identifications applied.
pub fn second_order_form(
    blocks: &AbcdBlocks,
    psi: &[FirstOrderForm],
    sigma: &[Option<Sym>],
    constraints: &[(Sym, Sym)],
) -> Result<SecondOrderFluxForm, PdeError> {
    let n = blocks.n();
    let dim = blocks.dim();
    let mut sig = Vec::with_capacity(psi.len());
    for m in 0..psi.len() {
        let mut s = sigma[n + m].ok_or(PdeError::MissingSigma(n + m))?;
        for &(from, to) in constraints {
            if s == from {
                s = to;
            }
        }
        sig.push(SymPoly::var(s));
    }
    let rows = map_range(n * dim, |ib| {
        let (i, b) = (ib / dim, ib % dim);
        let mut form = FirstOrderForm::new();
        for (m, p) in psi.iter().enumerate() {
            let bc = blocks.poly(Block::B, b, i, m);
            if bc.is_zero() {
                continue;
            }
            let w = &bc * &sig[m];
            for (l, a, c) in p.iter() {
                form.add(l, a, &(&w * c));
            }
        }
        form
    });
    let mut out = SecondOrderFluxForm::new();
    for (ib, form) in rows.into_iter().enumerate() {
        out.set(ib / dim, ib % dim, form);
    }
    Ok(out)
}

use std::fmt::Write;

use lbm_pde::Analysis;
use lbm_poly::{SymPoly, Vars};

const AXES: [&str; 3] = ["x", "y", "z"];

/// Plain-text analysis report. The discrepancy is printed as
/// `R = -(residual)`, i.e. what the scheme adds to the physical fluxes.
pub fn render_analysis(a: &Analysis, cs2: Option<&SymPoly>) -> String {
    let mut o = String::new();
    let v = &a.validation;
    let _ = writeln!(o, "scheme: {} ({}, {}D)", a.scheme, a.model.kind.name(), a.dim);
    if let Some(var) = &a.variant {
        let _ = writeln!(o, "variant: {var}");
    }
    let orth = if v.orthogonal {
        "yes".to_string()
    } else {
        let pairs: Vec<String> = v.non_orthogonal.iter().map(|(p, q)| format!("{p}/{q}")).collect();
        format!("NO ({})", pairs.join(", "))
    };
    let _ = writeln!(o, "orthogonal: {orth}");
    let _ = writeln!(o, "invertible: {} (rank {})", if v.invertible { "yes" } else { "NO" }, v.rank);
    if !a.parity_failures.is_empty() {
        let bad: Vec<String> = a.parity_failures.iter().map(|(m, d)| format!("{m} under {} -> -{}", AXES[*d], AXES[*d])).collect();
        let _ = writeln!(o, "parity: FAILS for {}", bad.join(", "));
    }
    if let Some(c) = cs2 {
        let _ = writeln!(o, "sound speed: cs^2 = {c}");
    }
    if let Some(g) = &a.model.gamma {
        let _ = writeln!(o, "gamma: {g}");
    }

    let euler_cells = a.euler.first().map_or(0, |m| m.len());
    if a.euler.is_zero() {
        let _ = writeln!(o, "Euler residual: EXACT");
    } else {
        let _ = writeln!(o, "Euler residual: {euler_cells} nonzero cells");
        for (&(i, b), p) in a.euler.first().into_iter().flatten() {
            let _ = writeln!(o, "  [{}, {}] {p}", a.equation_name(i), AXES[b]);
        }
    }

    if let Some(vis) = &a.viscosity {
        let _ = writeln!(o, "viscosity: mu = ({}) dt", vis.mu);
        let _ = writeln!(o, "           zeta = ({}) dt", vis.zeta);
        if let Some(pr) = &vis.prandtl {
            let _ = writeln!(o, "Prandtl: {pr}");
        }
    }
    match &a.ns {
        None => {
            let _ = writeln!(o, "NS residual: not computed (no viscosity table for this scheme)");
        }
        Some(ns) => {
            if !ns.constraints.is_empty() {
                let c: Vec<String> = ns.constraints.iter().map(|(f, t)| format!("{} = {}", f.name(), t.name())).collect();
                let _ = writeln!(o, "constraints: {}", c.join(", "));
            }
            if ns.is_zero() {
                let _ = writeln!(o, "NS residual: EXACT (0 unsolved)");
            } else {
                let _ = writeln!(o, "NS residual: {} unsolved", ns.unsolved());
            }
        }
    }
    if let Some(d) = a.discrepancy.as_ref().filter(|d| !d.is_empty()) {
        let sym = if d.momentum_symmetric() { "symmetric" } else { "not symmetric" };
        let _ = writeln!(o, "discrepancy R = -(residual), momentum block {sym}:");
        for (&(i, b), form) in &d.entries {
            let terms: Vec<String> =
                form.iter().map(|(k, al, c)| format!("({c}) d{}({})", AXES[al], a.field_name(k))).collect();
            let _ = writeln!(o, "  R[{}, {}] = {}", a.equation_name(i), AXES[b], terms.join(" + "));
        }
    }
    for dev in &a.deviations {
        let _ = writeln!(o, "deviation: {dev}");
    }
    o
}

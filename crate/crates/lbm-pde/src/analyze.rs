use lbm_equilibria::{equilibrium_family, EquilibriumSet, FluidModel, VariableMap};
use lbm_moments::SchemeMatrices;
use lbm_poly::{Sym, SymPoly, Vars};
use lbm_scheme::{builtin_variant, validate_scheme, SchemeDef, ValidationReport};
use serde_json::{json, Value};

use crate::flux::{first_order_fluxes, FirstOrderSystem};
use crate::gamma2::{psi1, second_order_form};
use crate::residual::{discrepancy_extract, euler_residual, navier_stokes_residual, Discrepancy, ResidualReport};
use crate::viscosity::{viscosity_table, ViscosityMap};
use crate::{Exec, PdeError};

/// Everything the analyzer derives for one scheme and equilibrium set.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub scheme: String,
    pub variant: Option<String>,
    pub dim: usize,
    pub model: FluidModel,
    pub validation: ValidationReport,
    pub parity_failures: Vec<(String, usize)>,
    pub system: FirstOrderSystem,
    pub euler: ResidualReport,
    pub gamma2: lbm_poly::SecondOrderFluxForm,
    pub viscosity: Option<ViscosityMap>,
    pub ns: Option<ResidualReport>,
    pub discrepancy: Option<Discrepancy>,
    pub deviations: Vec<String>,
    field_names: Vec<String>,
    eq_names: Vec<String>,
}

/// Runs the full pipeline. The equilibria are taken with the scheme's
/// sound-speed constraint applied; `vis = None` skips the viscous stage.
pub fn analyze(s: &SchemeDef, eq: &EquilibriumSet, vis: Option<&ViscosityMap>) -> Result<Analysis, PdeError> {
    let validation = validate_scheme(s);
    let mats = SchemeMatrices::build(s)?;
    let model = FluidModel::for_scheme(s);
    let vm = VariableMap::new(&model);
    let parity_failures = eq.parity_failures(s);
    let eqc = eq.constrained();
    let cs2 = eq.cs2();

    let system = first_order_fluxes(&mats.blocks, &eqc, &vm);
    let euler = euler_residual(&system, &model, cs2);
    let psi = psi1(&mats.blocks, &eqc, &vm, &system)?;
    let sigma: Vec<Option<Sym>> = s.moments().iter().map(|m| m.sigma).collect();
    let constraints = vis.map(|v| v.constraints.clone()).unwrap_or_default();
    let gamma2 = second_order_form(&mats.blocks, &psi, &sigma, &constraints)?;

    let vis = vis.map(|v| constrain_cs(v, cs2));
    let ns = vis.as_ref().map(|v| navier_stokes_residual(&gamma2, &model, v));
    let discrepancy = ns.as_ref().and_then(|r| discrepancy_extract(r, s.dim()));

    Ok(Analysis {
        scheme: s.name().to_string(),
        variant: s.variant().or(eq.variant()).map(str::to_string),
        dim: s.dim(),
        field_names: vm.primitives().iter().map(|v| v.name().to_string()).collect(),
        eq_names: s.moments()[..s.n_conserved()].iter().map(|m| m.name.clone()).collect(),
        model,
        validation,
        parity_failures,
        system,
        euler,
        gamma2,
        viscosity: vis,
        ns,
        discrepancy,
        deviations: s.deviations().to_vec(),
    })
}

fn constrain_cs(v: &ViscosityMap, cs2: Option<&SymPoly>) -> ViscosityMap {
    let Some(c) = cs2 else { return v.clone() };
    let sub = |p: &SymPoly| p.subs_square(Sym::Cs, c).expect("viscosity is even in cs");
    ViscosityMap { mu: sub(&v.mu), zeta: sub(&v.zeta), ..v.clone() }
}

/// Loads a built-in scheme, its equilibria and viscosities. The variant
/// applies to whichever of the scheme rows and equilibria declare it.
pub fn analyze_builtin(name: &str, variant: Option<&str>) -> Result<Analysis, PdeError> {
    let (s, eq) = load_builtin(name, variant)?;
    let vis = viscosity_table(&s)?;
    analyze(&s, &eq, Some(&vis))
}

/// Built-in scheme and equilibria with `variant` applied to whichever
/// declares it; a name declared by neither is an error.
pub fn load_builtin(name: &str, variant: Option<&str>) -> Result<(SchemeDef, EquilibriumSet), PdeError> {
    let s = builtin_variant(name, variant)?;
    let base = equilibrium_family(&s, None)?;
    let eq = match variant {
        Some(v) if base.has_variant(v) => base.with_variant(v)?,
        Some(v) if s.variant() != Some(v) => return Err(PdeError::UnknownVariant(name.to_string(), v.to_string())),
        _ => base,
    };
    Ok((s, eq))
}

/// Analyzes several built-ins. `Exec::Parallel` spreads the schemes over
/// the rayon pool when the `parallel` feature is on.
pub fn analyze_all(jobs: &[(String, Option<String>)], exec: Exec) -> Vec<Result<Analysis, PdeError>> {
    let one = |k: usize| analyze_builtin(&jobs[k].0, jobs[k].1.as_deref());
    match exec {
        Exec::Parallel => crate::map_range(jobs.len(), one),
        Exec::Sequential => (0..jobs.len()).map(one).collect(),
    }
}

impl Analysis {
    pub fn unsolved(&self) -> Option<usize> {
        self.ns.as_ref().map(ResidualReport::unsolved)
    }

    pub fn field_name(&self, k: usize) -> &str {
        &self.field_names[k]
    }

    pub fn equation_name(&self, i: usize) -> &str {
        &self.eq_names[i]
    }

    fn axis(a: usize) -> &'static str {
        ["x", "y", "z"][a]
    }

    pub fn to_json(&self) -> Value {
        let euler: Vec<Value> = self
            .euler
            .first()
            .into_iter()
            .flatten()
            .map(|(&(i, a), p)| json!({"equation": self.equation_name(i), "dir": Self::axis(a), "residual": p.to_string()}))
            .collect();
        let cells: Vec<Value> = self
            .ns
            .as_ref()
            .and_then(ResidualReport::second)
            .into_iter()
            .flat_map(|f| f.cells())
            .map(|(i, b, k, a, c)| {
                json!({
                    "equation": self.equation_name(i),
                    "outer": Self::axis(b),
                    "field": self.field_name(k),
                    "inner": Self::axis(a),
                    "residual": c.to_string(),
                })
            })
            .collect();
        let discrepancy: Vec<Value> = self
            .discrepancy
            .iter()
            .flat_map(|d| d.entries.iter())
            .map(|(&(i, b), form)| {
                let terms: Vec<Value> = form
                    .iter()
                    .map(|(k, a, c)| json!({"d": format!("d{}({})", Self::axis(a), self.field_name(k)), "coeff": c.to_string()}))
                    .collect();
                json!({"equation": self.equation_name(i), "dir": Self::axis(b), "terms": terms})
            })
            .collect();
        let viscosity = self.viscosity.as_ref().map(|v| {
            json!({
                "mu": format!("({}) dt", v.mu),
                "zeta": format!("({}) dt", v.zeta),
                "prandtl": v.prandtl.as_ref().map(ToString::to_string),
                "gamma": self.model.gamma.as_ref().map(ToString::to_string),
            })
        });
        let constraints: Vec<String> =
            self.ns.iter().flat_map(|r| r.constraints.iter()).map(|(f, t)| format!("{} = {}", f.name(), t.name())).collect();
        json!({
            "schema": "1",
            "scheme": self.scheme,
            "variant": self.variant,
            "orthogonal": self.validation.orthogonal,
            "non_orthogonal_pairs": self.validation.non_orthogonal.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "invertible": self.validation.invertible,
            "parity_failures": self.parity_failures.iter().map(|(m, d)| json!({"moment": m, "dir": Self::axis(*d)})).collect::<Vec<_>>(),
            "euler": {"exact": self.euler.is_zero(), "cells": euler},
            "navier_stokes": self.ns.as_ref().map(|r| json!({
                "exact": r.is_zero(),
                "unsolved": r.unsolved(),
                "cells": cells,
            })),
            "discrepancy": discrepancy,
            "symmetric_discrepancy": self.discrepancy.as_ref().map(Discrepancy::momentum_symmetric),
            "viscosity": viscosity,
            "constraints": constraints,
            "deviations": self.deviations,
        })
    }
}

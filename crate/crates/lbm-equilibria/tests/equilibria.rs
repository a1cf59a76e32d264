use lbm_equilibria::{
    dump_equilibria, equilibrium_family, jacobian_conserved, parse_equilibria, EqError, EquilibriumSet, FluidModel,
    VariableMap,
};
use lbm_poly::{int, parse_poly, rat, Sym, SymPoly};
use lbm_scheme::{builtin, builtin_names, SchemeDef};

fn p(s: &str) -> SymPoly {
    parse_poly(s).unwrap()
}

fn load(name: &str, variant: Option<&str>) -> (SchemeDef, EquilibriumSet) {
    let s = builtin(name).unwrap();
    let eq = equilibrium_family(&s, variant).unwrap();
    (s, eq)
}

#[test]
fn every_builtin_has_divisible_equilibria() {
    for name in builtin_names() {
        let (s, eq) = load(name, None);
        assert_eq!(eq.n_conserved(), s.n_conserved());
        assert!(eq.rho_divisibility_failures().is_empty(), "{name}");
    }
}

#[test]
fn default_equilibria_respect_parity() {
    for name in builtin_names() {
        let (s, eq) = load(name, None);
        assert_eq!(eq.parity_failures(&s), Vec::<(String, usize)>::new(), "{name}");
        for v in eq.variant_names().filter(|v| *v != "verbatim") {
            assert!(eq.with_variant(v).unwrap().parity_failures(&s).is_empty(), "{name} {v}");
        }
    }
}

#[test]
fn verbatim_rows_break_parity() {
    let (s, eq) = load("d2q17-th", Some("verbatim"));
    let bad = eq.parity_failures(&s);
    assert!(bad.contains(&("rx".into(), 0)) && bad.contains(&("ry".into(), 0)), "{bad:?}");

    let (s, eq) = load("d2w17-th", Some("verbatim"));
    let bad = eq.parity_failures(&s);
    assert!(bad.contains(&("ry".into(), 0)) && bad.contains(&("ry".into(), 1)), "{bad:?}");

    let (s, eq) = load("d2q9-iso", Some("verbatim"));
    assert!(eq.parity_failures(&s).contains(&("qx".into(), 0)));
}

#[test]
fn rest_state_kills_odd_moments() {
    for name in builtin_names() {
        let (s, eq) = load(name, None);
        let at = [
            (Sym::Rho, rat(3, 2)),
            (Sym::U, int(0)),
            (Sym::V, int(0)),
            (Sym::W, int(0)),
            (Sym::E, rat(1, 3)),
            (Sym::Lambda, int(2)),
            (Sym::Cs, rat(1, 2)),
        ];
        for (m, row, phi) in eq.iter() {
            let poly = &s.moments()[m].poly;
            let odd = poly.terms().all(|(mono, _)| (0..3).map(|i| mono.exp(i)).sum::<i16>() % 2 == 1);
            if odd {
                assert_eq!(phi.eval(&at).unwrap(), int(0), "{name} {row}");
            }
        }
    }
}

#[test]
fn tabulated_values() {
    let (_, eq) = load("d2q13-iso", Some("verbatim"));
    assert_eq!(eq.by_name("qx").unwrap(), &p("rho*u*(u^2 + v^2 + 4*lambda^2*cs^2 - 3*lambda^2)"));
    let (_, eq) = load("d2q13-iso", None);
    assert_eq!(eq.by_name("qx").unwrap(), &p("rho*u*(u^2 + v^2 + 4*cs^2 - 3*lambda^2)"));
    assert_eq!(eq.by_name("eps").unwrap(), &p("rho*(13*u^2 + 13*v^2 - 28*lambda^2 + 26*cs^2)"));
    let (_, eq) = load("d3q27-2-th", None);
    assert_eq!(eq.by_name("rx").unwrap(), &p("rho*u*lambda^2*(-(u^2 + 3*v^2 + 3*w^2) - 6*e + 5*lambda^2)"));
    let (_, eq) = load("d2q9-iso", None);
    assert_eq!(eq.by_name("h").unwrap(), &p("lambda^4*rho - 3*lambda^2*(u^2 + v^2)*rho"));
    assert_eq!(eq.cs2(), Some(&p("lambda^2/3")));
}

#[test]
fn anisotropic_choice() {
    let (_, eq) = load("d3q27-iso", Some("anisotropic"));
    assert_eq!(eq.variant(), Some("anisotropic"));
    assert_eq!(eq.by_name("y_zx").unwrap(), &p("rho*v*(w^2 - u^2 + v^2)"));
}

#[test]
fn d2q9_rest_phi_eps() {
    let (_, eq) = load("d2q9-iso", None);
    let phi = eq.constrained().by_name("eps").unwrap().clone();
    let at = [(Sym::Rho, int(1)), (Sym::U, int(0)), (Sym::V, int(0)), (Sym::Lambda, int(1))];
    assert_eq!(phi.eval(&at).unwrap(), int(-2));
}

#[test]
fn energy_maps() {
    for (name, expect) in [
        ("d2q13-th", "rho*(13*(u^2 + v^2) + 26*e - 28*lambda^2)"),
        ("d2q17-th", "rho*(17*(u^2 + v^2) + 34*e - 60*lambda^2)"),
        ("d3q33-th", "rho*(11*(u^2 + v^2 + w^2) + 22*e - 26*lambda^2)"),
    ] {
        let s = builtin(name).unwrap();
        let vm = VariableMap::new(&FluidModel::for_scheme(&s));
        assert_eq!(vm.conserved(s.n_conserved() - 1), &p(expect), "{name}");
    }
}

#[test]
fn gamma_by_dimension() {
    for name in builtin_names() {
        let m = FluidModel::for_scheme(&builtin(name).unwrap());
        let want = match (m.thermal(), m.dim) {
            (false, _) => None,
            (true, 2) => Some(int(2)),
            (true, _) => Some(rat(5, 3)),
        };
        assert_eq!(m.gamma, want, "{name}");
    }
}

#[test]
fn momentum_chain_rule() {
    let s = builtin("d2q9-iso").unwrap();
    let vm = VariableMap::new(&FluidModel::for_scheme(&s));
    assert_eq!(vm.chain(1, 0), &p("u"));
    assert_eq!(vm.chain(1, 1), &p("rho"));
    assert!(vm.chain(1, 2).is_zero());
    for name in builtin_names() {
        let vm = VariableMap::new(&FluidModel::for_scheme(&builtin(name).unwrap()));
        assert!(vm.inverse_is_consistent(), "{name}");
    }
}

#[test]
fn jacobian_of_xy() {
    let (s, eq) = load("d2q9-iso", None);
    let vm = VariableMap::new(&FluidModel::for_scheme(&s));
    let j = jacobian_conserved(&eq, &vm).unwrap();
    let xy = eq.index("xy").unwrap() - s.n_conserved();
    assert_eq!(j[xy][1], p("v"));
    assert_eq!(j[xy][0], p("-u*v"));
}

#[test]
fn jacobian_d2q13_thermal_flux_on_energy() {
    let (s, eq) = load("d2q13-th", None);
    let vm = VariableMap::new(&FluidModel::for_scheme(&s));
    let j = jacobian_conserved(&eq, &vm).unwrap();
    let qx = eq.index("qx").unwrap() - s.n_conserved();
    assert_eq!(j[qx][3], p("2/13*u"));
}

#[test]
fn jacobian_needs_rho_factor() {
    let (s, eq) = load("d2q9-iso", None);
    let vm = VariableMap::new(&FluidModel::for_scheme(&s));
    let xy = eq.index("xy").unwrap();
    let quadratic = eq.with_entry(xy, p("rho^2*u*v"));
    assert_eq!(jacobian_conserved(&quadratic, &vm).unwrap()[xy - 3][1], p("rho*v"));
    let bare = eq.with_entry(xy, p("u*v"));
    assert_eq!(jacobian_conserved(&bare, &vm), Err(EqError::NotDivisible("xy".into())));
    let src = lbm_equilibria::equilibria_source("d2q9-iso").unwrap();
    assert_eq!(parse_equilibria(&src.replace("xy = rho*u*v", "xy = u*v"), &s), Err(EqError::NotDivisible("xy".into())));
}

#[test]
fn file_errors() {
    let s = builtin("d2q9-iso").unwrap();
    let src = lbm_equilibria::equilibria_source("d2q9-iso").unwrap();
    assert!(matches!(parse_equilibria(&src.replace("xy = ", "zz = "), &s), Err(EqError::Parse { .. })));
    assert!(matches!(parse_equilibria(&src.replace("xy = rho*u*v", "xy = rho*u*e"), &s), Err(EqError::Parse { .. })));
    assert!(matches!(parse_equilibria(src, &builtin("d2q13-iso").unwrap()), Err(EqError::SchemeMismatch(..))));
}

#[test]
fn resplit_keeps_combination() {
    let (_, eq) = load("d3q33-iso", None);
    assert_eq!(eq.pairs().len(), 3);
    let target = eq.pair_target(&eq.pairs()[0]);
    let re = eq.resplit(0, p("rho*u*lambda^4*(u^2 - 2*v^2)"));
    assert_eq!(re.pair_target(&re.pairs()[0]), target);
    assert_ne!(re.by_name("rx"), eq.by_name("rx"));
}

#[test]
fn dump_round_trips() {
    for name in builtin_names() {
        let (s, eq) = load(name, None);
        let text = dump_equilibria(&eq);
        let back = parse_equilibria(&text, &s).unwrap();
        assert_eq!(dump_equilibria(&back), text, "{name}");
        assert_eq!(back.iter().collect::<Vec<_>>(), eq.iter().collect::<Vec<_>>());
    }
}

#[test]
fn jacobian_composes_with_chain_rule() {
    for name in builtin_names() {
        let (s, eq) = load(name, None);
        let vm = VariableMap::new(&FluidModel::for_scheme(&s));
        let j = jacobian_conserved(&eq, &vm).unwrap();
        for (k, (_, row, phi)) in eq.iter().enumerate() {
            for (l, &v) in vm.primitives().iter().enumerate() {
                let composed = (0..vm.n()).fold(SymPoly::zero(), |acc, i| acc + &j[k][i] * vm.chain(i, l));
                assert_eq!(composed, phi.derivative(v), "{name} {row} d/d{v}");
            }
        }
    }
}

use approx::assert_relative_eq;
use lbm_poly::Sym;
use lbm_sim::{Exec, Lattice, LatticeState, MacroFields, SimConfig, SimError};
use std::f64::consts::PI;

fn lattice(name: &str, grid: &[usize]) -> Lattice {
    Lattice::new(&SimConfig::new(name, grid).with_sigma(Sym::SigmaX, 0.25)).unwrap()
}

#[test]
fn d2q9_rest_populations_are_the_classical_weights() {
    let lat = lattice("d2q9-iso", &[4, 4]);
    let f = lat.equilibrium_populations(1.0, [0.0; 3], 0.0);
    for (j, c) in lat.velocities.iter().enumerate() {
        let want = match c[0].abs() + c[1].abs() {
            0 => 4.0 / 9.0,
            1 => 1.0 / 9.0,
            _ => 1.0 / 36.0,
        };
        assert_relative_eq!(f[j], want, max_relative = 1e-14);
    }
}

#[test]
fn uniform_state_is_a_fixed_point() {
    for name in lbm_scheme::builtin_names() {
        let dim = lbm_scheme::builtin(name).unwrap().dim();
        let grid = vec![3; dim];
        let lat = lattice(name, &grid);
        let e0 = lat.thermal().then_some(0.5);
        let fields = MacroFields::uniform(lat.cells(), 1.0, [0.0; 3], e0);
        let mut s = lat.init(&fields).unwrap();
        let before = s.f.clone();
        lat.step(&mut s).unwrap();
        for (a, b) in s.f.iter().zip(&before) {
            assert!((a - b).abs() <= 1e-15 * b.abs().max(1.0), "{name}: {a} vs {b}");
        }
    }
}

#[test]
fn unit_rates_land_on_equilibrium() {
    let cfg = SimConfig::new("d2q13-th", &[8, 8])
        .with_rate(Sym::SigmaX, 1.0)
        .with_rate(Sym::SigmaH, 1.0);
    let lat = Lattice::new(&cfg).unwrap();
    let mut fields = MacroFields::uniform(lat.cells(), 1.0, [0.0; 3], Some(0.5));
    for c in 0..lat.cells() {
        let x = (c % 8) as f64;
        fields.u[c] = [0.01 * (x * 0.7).sin(), 0.02 * (x * 0.3).cos(), 0.0];
        fields.rho[c] = 1.0 + 0.01 * (x * 1.1).cos();
    }
    let mut s = lat.init(&fields).unwrap();
    lat.step(&mut s).unwrap();
    lat.relax(&mut s).unwrap();
    for f in s.f.chunks(lat.q) {
        let m = lat.moments(f);
        let (rho, u, e) = lat.primitives(&m[..lat.n]);
        let phi = lat.equilibria(rho, u, e);
        for (k, p) in phi.iter().enumerate() {
            assert!((m[lat.n + k] - p).abs() < 1e-12 * p.abs().max(1.0), "row {}", lat.n + k);
        }
    }
}

#[test]
fn macro_fields_round_trip() {
    let lat = lattice("d2q13-iso", &[64, 2]);
    let k = 2.0 * PI / 64.0;
    let mut fields = MacroFields::uniform(lat.cells(), 1.0, [0.0; 3], None);
    for c in 0..lat.cells() {
        let x = (c % 64) as f64;
        fields.u[c][1] = 1e-3 * (k * x).sin();
        fields.rho[c] = 1.0 + 0.01 * (k * x).sin();
    }
    let back = lat.macro_fields(&lat.init(&fields).unwrap()).unwrap();
    for c in 0..lat.cells() {
        assert!((back.rho[c] - fields.rho[c]).abs() < 1e-12);
        for a in 0..2 {
            assert!((back.u[c][a] - fields.u[c][a]).abs() < 1e-12);
        }
    }
}

#[test]
fn thermal_energy_map_inverts() {
    // eps = 26 E - 28 lambda^2 rho for the 13-velocity thermal scheme.
    let lat = Lattice::new(&SimConfig::new("d2q13-th", &[16, 1]).with_sigma(Sym::SigmaX, 0.25)).unwrap();
    assert_eq!(lat.energy, Some((26.0, -28.0)));
    let mut fields = MacroFields::uniform(lat.cells(), 1.2, [0.01, -0.02, 0.0], Some(0.5));
    for (c, e) in fields.e.as_mut().unwrap().iter_mut().enumerate() {
        *e = 0.5 + 0.05 * (c as f64).sin();
    }
    let back = lat.macro_fields(&lat.init(&fields).unwrap()).unwrap();
    for (a, b) in back.e.unwrap().iter().zip(fields.e.unwrap()) {
        assert!((a - b).abs() < 1e-12);
    }
    let w = lat.conserved(1.0, [0.0; 3], 0.5);
    assert_relative_eq!(w[3], 26.0 * 0.5 - 28.0, max_relative = 1e-15);
}

#[test]
fn uniform_moments_equal_equilibria() {
    for name in ["d3q27-iso", "d2w17-th"] {
        let dim = lbm_scheme::builtin(name).unwrap().dim();
        let lat = lattice(name, &vec![2; dim]);
        let u = [0.02, -0.01, 0.015];
        let e0 = lat.thermal().then_some(0.5);
        let s = lat.init(&MacroFields::uniform(lat.cells(), 1.1, u, e0)).unwrap();
        let m = lat.moments(&s.f[..lat.q]);
        let u = if dim == 2 { [u[0], u[1], 0.0] } else { u };
        let phi = lat.equilibria(1.1, u, e0.unwrap_or(0.0));
        for (k, p) in phi.iter().enumerate() {
            assert!((m[lat.n + k] - p).abs() < 1e-12 * p.abs().max(1.0), "{name} row {}", lat.n + k);
        }
    }
}

/// Smooth fields with a nonzero mean in every conserved component.
fn wavy(lat: &Lattice) -> MacroFields {
    let mut f = MacroFields::uniform(lat.cells(), 1.0, [0.05, 0.03, 0.02], lat.thermal().then_some(0.5));
    let [nx, ny, _] = lat.grid;
    for c in 0..lat.cells() {
        let (x, y, z) = ((c % nx) as f64, ((c / nx) % ny) as f64, (c / (nx * ny)) as f64);
        let ph = 2.0 * PI * (x / nx as f64 + 2.0 * y / ny as f64) + 0.3 * z;
        f.rho[c] = 1.0 + 0.01 * ph.sin();
        f.u[c][0] += 0.01 * (ph + 0.4).cos();
        f.u[c][1] += 0.01 * ph.sin();
        if lat.dim == 3 {
            f.u[c][2] += 0.005 * (2.0 * ph).cos();
        } else {
            f.u[c][2] = 0.0;
        }
        if let Some(e) = f.e.as_mut() {
            e[c] += 0.01 * (ph - 0.2).cos();
        }
    }
    f
}

fn assert_conserved(name: &str, grid: &[usize], steps: usize) {
    let lat = lattice(name, grid);
    let mut s = lat.init(&wavy(&lat)).unwrap();
    let before = lat.totals(&s);
    lat.run(&mut s, steps).unwrap();
    let after = lat.totals(&s);
    for (k, (a, b)) in after.iter().zip(&before).enumerate() {
        let rel = (a - b).abs() / b.abs();
        assert!(rel < 1e-13, "{name}: conserved {k} drifted by {rel:e}");
    }
}

#[test]
fn conservation_2d_isothermal() {
    assert_conserved("d2q9-iso", &[64, 64], 1000);
}

#[test]
fn conservation_2d_thermal() {
    assert_conserved("d2q13-th", &[64, 64], 1000);
}

#[test]
fn conservation_3d() {
    assert_conserved("d3q19-iso", &[32, 32, 32], 1000);
}

#[test]
fn parallel_and_sequential_agree_bitwise() {
    for (name, grid) in [("d2q9-iso", vec![32, 16]), ("d3q27-2-th", vec![8, 6, 4])] {
        let mut lat = lattice(name, &grid);
        let init = lat.init(&wavy(&lat)).unwrap();
        let mut runs: Vec<LatticeState> = Vec::new();
        for exec in [Exec::Sequential, Exec::Parallel] {
            lat.set_exec(exec);
            let mut s = init.clone();
            lat.run(&mut s, 25).unwrap();
            runs.push(s);
        }
        assert!(runs[0].f.iter().zip(&runs[1].f).all(|(a, b)| a.to_bits() == b.to_bits()), "{name}");
    }
}

#[test]
fn rates_outside_the_open_interval_are_rejected() {
    let cfg = SimConfig::new("d2q9-iso", &[4, 4]).with_rate(Sym::SigmaX, 2.5);
    let err = Lattice::new(&cfg).unwrap_err();
    assert!(matches!(err, SimError::Rate { .. }));
    assert!(err.to_string().contains("relaxation rate out of (0,2)"));
    assert!(Lattice::new(&SimConfig::new("d2q9-iso", &[4, 4]).with_rate(Sym::SigmaH, 2.0)).is_err());
    assert!(Lattice::new(&SimConfig::new("d2q9-iso", &[4, 4]).with_sigma(Sym::SigmaE, -0.6)).is_err());
}

#[test]
fn grid_must_match_dimension() {
    assert!(matches!(Lattice::new(&SimConfig::new("d3q19-iso", &[8, 8])), Err(SimError::Grid(_))));
    assert!(matches!(Lattice::new(&SimConfig::new("d2q9-iso", &[8, 0])), Err(SimError::Grid(_))));
}

#[test]
fn nonpositive_density_is_reported() {
    let lat = lattice("d2q9-iso", &[4, 4]);
    let mut fields = MacroFields::uniform(lat.cells(), 1.0, [0.0; 3], None);
    fields.rho[5] = -1.0;
    assert!(matches!(lat.init(&fields), Err(SimError::NonPositiveDensity { cell: 5, .. })));

    let mut s = lat.init(&MacroFields::uniform(lat.cells(), 1.0, [0.0; 3], None)).unwrap();
    for j in 0..lat.q {
        s.f[3 * lat.q + j] = -1.0;
    }
    assert!(matches!(lat.step(&mut s), Err(SimError::NonPositiveDensity { cell: 3, time: 0 })));
}

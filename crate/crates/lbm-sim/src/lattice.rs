use lbm_equilibria::{EquilibriumSet, FluidModel};
use lbm_moments::MomentMatrix;
use lbm_pde::{load_builtin, Exec};
use lbm_poly::{Sym, SymPoly, Vars, MAX_VARS};
use lbm_scheme::SchemeDef;
use num_traits::ToPrimitive;

use crate::{SimConfig, SimError};

/// Polynomial with `f64` coefficients and sparse exponent lists.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl CompiledPoly {
    pub fn new(p: &SymPoly) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| {
                let exps = (0..MAX_VARS).filter(|&i| m.exp(i) != 0).map(|i| (i, m.exp(i) as i32)).collect();
                (c.to_f64().unwrap_or(f64::NAN), exps)
            })
            .collect();
        CompiledPoly { terms }
    }

    #[inline]
    pub fn eval(&self, vals: &[f64; MAX_VARS]) -> f64 {
        self.terms
            .iter()
            .map(|(c, exps)| exps.iter().fold(*c, |acc, &(i, e)| acc * vals[i].powi(e)))
            .sum()
    }
}

/// Everything a step needs, in floating point.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub dim: usize,
    pub q: usize,
    pub n: usize,
    pub grid: [usize; 3],
    pub velocities: Vec<[i32; 3]>,
    pub lambda: f64,
    m: Vec<f64>,
    minv: Vec<f64>,
    /// Rate per moment row (unused for conserved rows).
    pub rates: Vec<f64>,
    equilibria: Vec<CompiledPoly>,
    /// `(a, b)` energy map, thermal schemes only.
    pub energy: Option<(f64, f64)>,
    pub cs: f64,
    pub model: FluidModel,
    exec: Exec,
}

/// Per-cell primitive fields.
#[derive(Clone, Debug, PartialEq)]
pub struct MacroFields {
    pub rho: Vec<f64>,
    /// Velocity per cell; unused components are zero.
    pub u: Vec<[f64; 3]>,
    /// Internal energy per cell (thermal schemes).
    pub e: Option<Vec<f64>>,
}

impl MacroFields {
    pub fn uniform(cells: usize, rho: f64, u: [f64; 3], e: Option<f64>) -> Self {
        MacroFields { rho: vec![rho; cells], u: vec![u; cells], e: e.map(|e| vec![e; cells]) }
    }
}

/// Populations, cell-major: `f[cell * q + j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeState {
    pub f: Vec<f64>,
    pub time: usize,
}

impl Lattice {
    pub fn new(cfg: &SimConfig) -> Result<Self, SimError> {
        let (s, eq) = load_builtin(&cfg.scheme, cfg.variant.as_deref())?;
        Self::from_parts(&s, &eq, cfg)
    }

    pub fn from_parts(s: &SchemeDef, eq: &EquilibriumSet, cfg: &SimConfig) -> Result<Self, SimError> {
        let dim = s.dim();
        if cfg.grid.len() != dim || cfg.grid.contains(&0) {
            return Err(SimError::Grid(format!("{} needs {dim} nonzero extents, got {:?}", s.name(), cfg.grid)));
        }
        if !(cfg.lambda > 0.0 && cfg.lambda.is_finite()) {
            return Err(SimError::Grid(format!("lambda must be positive, got {}", cfg.lambda)));
        }
        let mm = MomentMatrix::build(s).map_err(lbm_pde::PdeError::from)?;
        let (m, minv) = mm.to_f64(cfg.lambda);
        let n = s.n_conserved();
        if let Some((sym, &r)) = cfg.rates.iter().find(|(_, &r)| !(r > 0.0 && r < 2.0)) {
            return Err(SimError::Rate { symbol: sym.name().to_string(), value: r });
        }
        let mut rates = vec![0.0; s.q()];
        for (k, mom) in s.moments().iter().enumerate().skip(n) {
            let sym = mom.sigma.expect("validated descriptor");
            let r = cfg.rate(sym);
            if !(r > 0.0 && r < 2.0) {
                return Err(SimError::Rate { symbol: sym.name().to_string(), value: r });
            }
            rates[k] = r;
        }
        let cs = match eq.cs2() {
            Some(c) => {
                let mut v = [0.0; MAX_VARS];
                v[Sym::Lambda.index()] = cfg.lambda;
                CompiledPoly::new(c).eval(&v).sqrt()
            }
            None => cfg.cs2.unwrap_or(cfg.lambda * cfg.lambda / 3.0).sqrt(),
        };
        let eqc = eq.constrained();
        let equilibria = (n..s.q()).map(|k| CompiledPoly::new(eqc.get(k))).collect();
        let energy = s.energy().map(|(a, b)| (a.to_f64().unwrap(), b.to_f64().unwrap()));
        let mut grid = [1; 3];
        grid[..dim].copy_from_slice(&cfg.grid);
        Ok(Lattice {
            dim,
            q: s.q(),
            n,
            grid,
            velocities: s.velocities().to_vec(),
            lambda: cfg.lambda,
            m,
            minv,
            rates,
            equilibria,
            energy,
            cs,
            model: FluidModel::for_scheme(s),
            exec: cfg.exec,
        })
    }

    pub fn cells(&self) -> usize {
        self.grid.iter().product()
    }

    pub fn thermal(&self) -> bool {
        self.energy.is_some()
    }

    pub fn set_exec(&mut self, exec: Exec) {
        self.exec = exec;
    }

    /// Row-major float moment matrix.
    pub fn moment_matrix(&self) -> &[f64] {
        &self.m
    }

    /// Moments `m = M f` of one cell.
    pub fn moments(&self, f: &[f64]) -> Vec<f64> {
        (0..self.q).map(|k| self.row(k, f)).collect()
    }

    #[inline]
    fn row(&self, k: usize, f: &[f64]) -> f64 {
        self.m[k * self.q..(k + 1) * self.q].iter().zip(f).map(|(a, b)| a * b).sum()
    }

    /// Primitives `(rho, u, e)` from conserved moments.
    pub fn primitives(&self, w: &[f64]) -> (f64, [f64; 3], f64) {
        let rho = w[0];
        let mut u = [0.0; 3];
        for a in 0..self.dim {
            u[a] = w[1 + a] / rho;
        }
        let e = match self.energy {
            Some((a, b)) => {
                let u2: f64 = u.iter().map(|x| x * x).sum();
                ((w[self.dim + 1] - b * self.lambda * self.lambda * rho) / a - 0.5 * rho * u2) / rho
            }
            None => 0.0,
        };
        (rho, u, e)
    }

    /// Conserved moments `W` of a primitive state.
    pub fn conserved(&self, rho: f64, u: [f64; 3], e: f64) -> Vec<f64> {
        let mut w = vec![rho];
        w.extend((0..self.dim).map(|a| rho * u[a]));
        if let Some((a, b)) = self.energy {
            let u2: f64 = u.iter().map(|x| x * x).sum();
            w.push(a * (0.5 * rho * u2 + rho * e) + b * self.lambda * self.lambda * rho);
        }
        w
    }

    fn vals(&self, rho: f64, u: [f64; 3], e: f64) -> [f64; MAX_VARS] {
        let mut v = [0.0; MAX_VARS];
        v[Sym::Rho.index()] = rho;
        v[Sym::U.index()] = u[0];
        v[Sym::V.index()] = u[1];
        v[Sym::W.index()] = u[2];
        v[Sym::E.index()] = e;
        v[Sym::Lambda.index()] = self.lambda;
        v[Sym::Cs.index()] = self.cs;
        v
    }

    /// Equilibria `Phi_k(W)` for the nonconserved rows, in row order.
    pub fn equilibria(&self, rho: f64, u: [f64; 3], e: f64) -> Vec<f64> {
        let v = self.vals(rho, u, e);
        self.equilibria.iter().map(|p| p.eval(&v)).collect()
    }

    /// `f = M^-1 (W; Phi(W))` for one cell.
    pub fn equilibrium_populations(&self, rho: f64, u: [f64; 3], e: f64) -> Vec<f64> {
        let mut m = self.conserved(rho, u, e);
        m.extend(self.equilibria(rho, u, e));
        (0..self.q).map(|j| (0..self.q).map(|k| self.minv[j * self.q + k] * m[k]).sum()).collect()
    }

    /// Relaxes one cell in place; returns false on a nonpositive or
    /// non-finite density.
    fn collide_cell(&self, f: &mut [f64], neq: &mut [f64]) -> bool {
        let n = self.n;
        let mut w = [0.0; 8];
        for (k, wk) in w.iter_mut().enumerate().take(n) {
            *wk = self.row(k, f);
        }
        let (rho, u, e) = self.primitives(&w[..n]);
        if !(rho > 0.0 && rho.is_finite()) {
            return false;
        }
        let v = self.vals(rho, u, e);
        for k in n..self.q {
            neq[k - n] = self.rates[k] * (self.equilibria[k - n].eval(&v) - self.row(k, f));
        }
        for (j, fj) in f.iter_mut().enumerate() {
            let row = &self.minv[j * self.q + n..(j + 1) * self.q];
            *fj += row.iter().zip(neq.iter()).map(|(a, b)| a * b).sum::<f64>();
        }
        true
    }

    fn collide(&self, f: &mut [f64]) -> usize {
        let q = self.q;
        let r = q - self.n;
        match self.exec {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                f.par_chunks_mut(q)
                    .map_init(|| vec![0.0; r], |neq, cell| usize::from(!self.collide_cell(cell, neq)))
                    .sum()
            }
            _ => {
                let mut neq = vec![0.0; r];
                f.chunks_mut(q).map(|cell| usize::from(!self.collide_cell(cell, &mut neq))).sum()
            }
        }
    }

    #[inline]
    fn source(&self, cell: usize, c: &[i32; 3]) -> usize {
        let [nx, ny, nz] = self.grid;
        let (x, y, z) = (cell % nx, (cell / nx) % ny, cell / (nx * ny));
        let wrap = |p: usize, d: i32, len: usize| (p as i64 - d as i64).rem_euclid(len as i64) as usize;
        wrap(x, c[0], nx) + nx * (wrap(y, c[1], ny) + ny * wrap(z, c[2], nz))
    }

    fn stream_cell(&self, cell: usize, out: &mut [f64], src: &[f64]) {
        let q = self.q;
        for (j, c) in self.velocities.iter().enumerate() {
            out[j] = src[self.source(cell, c) * q + j];
        }
    }

    fn stream(&self, src: &[f64], dst: &mut [f64]) {
        let q = self.q;
        match self.exec {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                dst.par_chunks_mut(q).enumerate().for_each(|(cell, out)| self.stream_cell(cell, out, src));
            }
            _ => dst.chunks_mut(q).enumerate().for_each(|(cell, out)| self.stream_cell(cell, out, src)),
        }
    }

    /// Equilibrium initialization from per-cell fields.
    pub fn init(&self, fields: &MacroFields) -> Result<LatticeState, SimError> {
        let cells = self.cells();
        if fields.rho.len() != cells || fields.u.len() != cells {
            return Err(SimError::Grid(format!("fields cover {} cells, grid has {cells}", fields.rho.len())));
        }
        let mut f = Vec::with_capacity(cells * self.q);
        for c in 0..cells {
            let rho = fields.rho[c];
            if !(rho > 0.0) {
                return Err(SimError::NonPositiveDensity { cell: c, time: 0 });
            }
            let e = fields.e.as_ref().map_or(0.0, |e| e[c]);
            f.extend(self.equilibrium_populations(rho, fields.u[c], e));
        }
        Ok(LatticeState { f, time: 0 })
    }

    /// Collision only, no streaming.
    pub fn relax(&self, state: &mut LatticeState) -> Result<(), SimError> {
        match self.collide(&mut state.f) {
            0 => Ok(()),
            _ => Err(SimError::NonPositiveDensity { cell: self.first_bad(state), time: state.time }),
        }
    }

    fn first_bad(&self, state: &LatticeState) -> usize {
        state
            .f
            .chunks(self.q)
            .position(|c| {
                let rho = self.row(0, c);
                !(rho > 0.0 && rho.is_finite())
            })
            .unwrap_or(0)
    }

    /// One collide-then-stream update; `scratch` is resized as needed.
    pub fn step_with(&self, state: &mut LatticeState, scratch: &mut Vec<f64>) -> Result<(), SimError> {
        self.relax(state)?;
        scratch.resize(state.f.len(), 0.0);
        self.stream(&state.f, scratch);
        std::mem::swap(&mut state.f, scratch);
        state.time += 1;
        Ok(())
    }

    pub fn step(&self, state: &mut LatticeState) -> Result<(), SimError> {
        let mut scratch = Vec::new();
        self.step_with(state, &mut scratch)
    }

    pub fn run(&self, state: &mut LatticeState, steps: usize) -> Result<(), SimError> {
        let mut scratch = vec![0.0; state.f.len()];
        for _ in 0..steps {
            self.step_with(state, &mut scratch)?;
        }
        if state.f.iter().any(|x| !x.is_finite()) {
            return Err(SimError::NonFinite { time: state.time });
        }
        Ok(())
    }

    pub fn macro_fields(&self, state: &LatticeState) -> Result<MacroFields, SimError> {
        let cells = self.cells();
        let mut out = MacroFields {
            rho: Vec::with_capacity(cells),
            u: Vec::with_capacity(cells),
            e: self.thermal().then(|| Vec::with_capacity(cells)),
        };
        for (c, f) in state.f.chunks(self.q).enumerate() {
            let w: Vec<f64> = (0..self.n).map(|k| self.row(k, f)).collect();
            let (rho, u, e) = self.primitives(&w);
            if !(rho > 0.0) {
                return Err(SimError::NonPositiveDensity { cell: c, time: state.time });
            }
            out.rho.push(rho);
            out.u.push(u);
            if let Some(es) = out.e.as_mut() {
                es.push(e);
            }
        }
        Ok(out)
    }

    /// Sum of each conserved moment over the grid.
    pub fn totals(&self, state: &LatticeState) -> Vec<f64> {
        let mut t = vec![0.0; self.n];
        for f in state.f.chunks(self.q) {
            for (k, tk) in t.iter_mut().enumerate() {
                *tk += self.row(k, f);
            }
        }
        t
    }

    /// Cell index of grid coordinates.
    pub fn index(&self, x: usize, y: usize, z: usize) -> usize {
        x + self.grid[0] * (y + self.grid[1] * z)
    }
}

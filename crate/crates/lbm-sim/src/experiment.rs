use std::f64::consts::PI;
use std::fmt::Write;

use lbm_pde::{load_builtin, viscosity_table};
use lbm_poly::{Sym, Vars, MAX_VARS};

use crate::{CompiledPoly, Experiment, Lattice, LatticeState, MacroFields, SimConfig, SimError, MAX_AMPLITUDE};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub step: usize,
    pub time: f64,
    pub value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fit {
    pub rate: f64,
    pub r2: f64,
}

#[derive(Clone, Debug)]
pub struct MeasurementReport {
    pub experiment: Experiment,
    pub scheme: String,
    /// `nu`, `c` or `chi`.
    pub quantity: &'static str,
    pub measured: f64,
    pub predicted: f64,
    pub fit: Option<Fit>,
    pub observable: &'static str,
    pub series: Vec<Sample>,
}

impl MeasurementReport {
    pub fn ratio(&self) -> f64 {
        self.measured / self.predicted
    }

    pub fn summary(&self) -> String {
        format!(
            "{} {}: {q}_measured = {:.6e}, {q}_predicted = {:.6e}, {q}_measured/{q}_predicted = {:.4} ({:+.2}%)",
            self.scheme,
            self.experiment.name(),
            self.measured,
            self.predicted,
            self.ratio(),
            100.0 * (self.ratio() - 1.0),
            q = self.quantity,
        )
    }
}

pub fn series_csv(r: &MeasurementReport) -> String {
    let mut out = format!("step,time,{}\n", r.observable);
    for s in &r.series {
        writeln!(out, "{},{:.10e},{:.17e}", s.step, s.time, s.value).unwrap();
    }
    out
}

/// Least-squares decay rate of `a(t) ~ exp(-rate t)` on log-amplitudes,
/// skipping the first 5% of samples.
pub fn fit_exponential(series: &[(f64, f64)]) -> Result<Fit, SimError> {
    let skip = (series.len() as f64 * 0.05).ceil() as usize;
    let pts = &series[skip.min(series.len())..];
    if pts.len() < 3 {
        return Err(SimError::Fit(format!("{} samples after the warm-up window", pts.len())));
    }
    if pts.iter().all(|&(_, a)| a.abs() < 1e-300) {
        return Ok(Fit { rate: 0.0, r2: 1.0 });
    }
    if pts.windows(2).any(|w| w[1].1 > w[0].1 * (1.0 + 1e-9)) {
        return Err(SimError::Fit("amplitude is not monotone".into()));
    }
    if pts.iter().any(|&(_, a)| !(a > 0.0)) {
        return Err(SimError::Fit("amplitude vanished".into()));
    }
    let n = pts.len() as f64;
    let (st, sy) = pts.iter().fold((0.0, 0.0), |(st, sy), &(t, a)| (st + t, sy + a.ln()));
    let (mt, my) = (st / n, sy / n);
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(t, a) in pts {
        let (dx, dy) = (t - mt, a.ln() - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    if r2 < 0.99 {
        return Err(SimError::Fit(format!("R^2 = {r2:.4} below 0.99")));
    }
    Ok(Fit { rate: -slope, r2 })
}

/// Fourier coefficient of a per-cell field along x at wavenumber `k`,
/// normalized so that `A sin(kx)` or `A cos(kx)` gives modulus `A`.
fn mode(lat: &Lattice, field: impl Fn(usize) -> f64, k: f64) -> (f64, f64) {
    let (mut re, mut im) = (0.0, 0.0);
    for c in 0..lat.cells() {
        let x = (c % lat.grid[0]) as f64;
        let v = field(c);
        re += v * (k * x).cos();
        im -= v * (k * x).sin();
    }
    let norm = 2.0 / lat.cells() as f64;
    (re * norm, im * norm)
}

/// `nu = mu / rho` in cell units per unit time, from the viscosity table.
pub fn predicted_nu(cfg: &SimConfig, lat: &Lattice) -> Result<f64, SimError> {
    let (s, _) = load_builtin(&cfg.scheme, cfg.variant.as_deref())?;
    let vis = viscosity_table(&s)?;
    let mut v = [0.0; MAX_VARS];
    v[Sym::Rho.index()] = cfg.rho0;
    v[Sym::E.index()] = cfg.e0;
    v[Sym::Lambda.index()] = cfg.lambda;
    v[Sym::Cs.index()] = lat.cs;
    for sym in [Sym::SigmaE, Sym::SigmaX, Sym::SigmaQ, Sym::SigmaH] {
        v[sym.index()] = cfg.sigma(sym);
    }
    let mu = CompiledPoly::new(&vis.constrain(&vis.mu)).eval(&v);
    Ok(mu * cfg.dt() / cfg.rho0)
}

fn prandtl(cfg: &SimConfig) -> Result<f64, SimError> {
    let (s, _) = load_builtin(&cfg.scheme, cfg.variant.as_deref())?;
    let pr = viscosity_table(&s)?.prandtl.ok_or_else(|| SimError::Incompatible("no Prandtl number".into()))?;
    Ok(num_traits::ToPrimitive::to_f64(&pr).unwrap())
}

fn record(
    lat: &Lattice,
    cfg: &SimConfig,
    state: &mut LatticeState,
    observe: impl Fn(&MacroFields) -> f64,
) -> Result<Vec<Sample>, SimError> {
    let every = cfg.record_every.max(1);
    let mut out = Vec::with_capacity(cfg.steps / every + 1);
    let mut scratch = vec![0.0; state.f.len()];
    loop {
        let fields = lat.macro_fields(state)?;
        let value = observe(&fields);
        if !value.is_finite() {
            return Err(SimError::NonFinite { time: state.time });
        }
        out.push(Sample { step: state.time, time: state.time as f64 * cfg.dt(), value });
        if state.time >= cfg.steps {
            return Ok(out);
        }
        for _ in 0..every.min(cfg.steps - state.time) {
            lat.step_with(state, &mut scratch)?;
        }
    }
}

/// Runs the configured experiment and compares the measured transport
/// coefficient with the prediction.
pub fn run_experiment(cfg: &SimConfig) -> Result<MeasurementReport, SimError> {
    let kind = cfg.experiment.ok_or_else(|| SimError::Config { line: 0, msg: "missing `experiment`".into() })?;
    let lat = Lattice::new(cfg)?;
    if kind == Experiment::ThermalWave && !lat.thermal() {
        return Err(SimError::Incompatible(format!("{} on isothermal scheme {}", kind.name(), cfg.scheme)));
    }
    if cfg.amplitude.abs() > MAX_AMPLITUDE {
        return Err(SimError::Config { line: 0, msg: format!("amplitude {} exceeds {MAX_AMPLITUDE}", cfg.amplitude) });
    }
    if lat.dim < 2 {
        return Err(SimError::Grid("experiments need at least two dimensions".into()));
    }
    let cells = lat.cells();
    let lx = lat.grid[0] as f64;
    let k = 2.0 * PI / lx;
    let x = |c: usize| (c % lat.grid[0]) as f64;
    let e0 = lat.thermal().then_some(cfg.e0);
    let ub = cfg.background * cfg.lambda;
    let mut fields = MacroFields::uniform(cells, cfg.rho0, [ub, 0.0, 0.0], e0);
    let a = cfg.amplitude;
    match kind {
        Experiment::ShearWave => {
            for c in 0..cells {
                fields.u[c][1] = a * cfg.lambda * (k * x(c)).sin();
            }
        }
        Experiment::Acoustic => {
            for c in 0..cells {
                fields.rho[c] = cfg.rho0 * (1.0 + a * (k * x(c)).cos());
            }
        }
        Experiment::ThermalWave => {
            // Isobaric: rho e held fixed.
            let es = fields.e.as_mut().unwrap();
            for c in 0..cells {
                let g = 1.0 + a * (k * x(c)).sin();
                es[c] = cfg.e0 * g;
                fields.rho[c] = cfg.rho0 / g;
            }
        }
    }
    let mut state = lat.init(&fields)?;

    let (quantity, observable, measured, predicted, fit, series) = match kind {
        Experiment::ShearWave => {
            let series = record(&lat, cfg, &mut state, |f| {
                let (re, im) = mode(&lat, |c| f.u[c][1], k);
                re.hypot(im)
            })?;
            let fit = fit_exponential(&series.iter().map(|s| (s.time, s.value)).collect::<Vec<_>>())?;
            ("nu", "uy_amplitude", fit.rate / (k * k), predicted_nu(cfg, &lat)?, Some(fit), series)
        }
        Experiment::ThermalWave => {
            let series = record(&lat, cfg, &mut state, |f| {
                let e = f.e.as_ref().unwrap();
                let (re, im) = mode(&lat, |c| e[c], k);
                re.hypot(im)
            })?;
            let fit = fit_exponential(&series.iter().map(|s| (s.time, s.value)).collect::<Vec<_>>())?;
            let chi = predicted_nu(cfg, &lat)? / prandtl(cfg)?;
            ("chi", "e_amplitude", fit.rate / (k * k), chi, Some(fit), series)
        }
        Experiment::Acoustic => {
            let series = record(&lat, cfg, &mut state, |f| mode(&lat, |c| f.rho[c] - cfg.rho0, k).0)?;
            let c = phase_speed(&series, k)?;
            let predicted = match &lat.model.gamma {
                None => lat.cs,
                Some(g) => {
                    let g = num_traits::ToPrimitive::to_f64(g).unwrap();
                    (g * (g - 1.0) * cfg.e0).sqrt()
                }
            };
            ("c", "rho_mode", c, predicted, None, series)
        }
    };
    Ok(MeasurementReport { experiment: kind, scheme: cfg.scheme.clone(), quantity, measured, predicted, fit, observable, series })
}

/// `omega / k` from the spacing of zero crossings of a standing wave.
fn phase_speed(series: &[Sample], k: f64) -> Result<f64, SimError> {
    let mut crossings = Vec::new();
    for w in series.windows(2) {
        let (a, b) = (w[0].value, w[1].value);
        if a != 0.0 && a.signum() != b.signum() {
            crossings.push(w[0].time + (w[1].time - w[0].time) * a / (a - b));
        }
    }
    if crossings.len() < 3 {
        return Err(SimError::Fit(format!("{} zero crossings", crossings.len())));
    }
    let span = crossings.last().unwrap() - crossings[0];
    let half_period = span / (crossings.len() - 1) as f64;
    Ok(PI / half_period / k)
}

use std::collections::BTreeMap;
use std::str::FromStr;

use lbm_pde::Exec;
use lbm_poly::{Sym, Vars};

use crate::SimError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    ShearWave,
    Acoustic,
    ThermalWave,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::ShearWave => "shear-wave",
            Experiment::Acoustic => "acoustic",
            Experiment::ThermalWave => "thermal-wave",
        }
    }
}

impl FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "shear-wave" => Ok(Experiment::ShearWave),
            "acoustic" => Ok(Experiment::Acoustic),
            "thermal-wave" => Ok(Experiment::ThermalWave),
            _ => Err(format!("unknown experiment `{s}`")),
        }
    }
}

/// Run parameters. Lengths are in cells (`dx = 1`), so `dt = 1 / lambda`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub scheme: String,
    pub variant: Option<String>,
    pub grid: Vec<usize>,
    pub lambda: f64,
    /// Relaxation rates `s` per sigma symbol, as given.
    pub rates: BTreeMap<Sym, f64>,
    /// Numeric `cs^2` for schemes that leave the sound speed free.
    pub cs2: Option<f64>,
    pub rho0: f64,
    /// Reference internal energy (thermal schemes).
    pub e0: f64,
    pub experiment: Option<Experiment>,
    /// Perturbation amplitude: velocity in units of lambda, or relative for
    /// density and energy.
    pub amplitude: f64,
    /// Uniform background velocity along x, in units of lambda.
    pub background: f64,
    pub steps: usize,
    pub record_every: usize,
    pub exec: Exec,
}

pub const MAX_AMPLITUDE: f64 = 1e-3;

impl SimConfig {
    pub fn new(scheme: &str, grid: &[usize]) -> Self {
        SimConfig {
            scheme: scheme.to_string(),
            variant: None,
            grid: grid.to_vec(),
            lambda: 1.0,
            rates: BTreeMap::new(),
            cs2: None,
            rho0: 1.0,
            e0: 0.5,
            experiment: None,
            amplitude: MAX_AMPLITUDE,
            background: 0.0,
            steps: 2000,
            record_every: 10,
            exec: Exec::default(),
        }
    }

    /// Sets the rate of `sym` from a Henon parameter, `s = 1 / (sigma + 1/2)`.
    pub fn with_sigma(mut self, sym: Sym, sigma: f64) -> Self {
        self.rates.insert(sym, 1.0 / (sigma + 0.5));
        self
    }

    pub fn with_rate(mut self, sym: Sym, s: f64) -> Self {
        self.rates.insert(sym, s);
        self
    }

    /// Rate of `sym`: explicit value, else `s_x` for `sigma_q` and
    /// `sigma_e`, else 1.
    pub fn rate(&self, sym: Sym) -> f64 {
        if let Some(&s) = self.rates.get(&sym) {
            return s;
        }
        match sym {
            Sym::SigmaQ | Sym::SigmaE => self.rates.get(&Sym::SigmaX).copied().unwrap_or(1.0),
            _ => 1.0,
        }
    }

    pub fn sigma(&self, sym: Sym) -> f64 {
        1.0 / self.rate(sym) - 0.5
    }

    pub fn cells(&self) -> usize {
        self.grid.iter().product()
    }

    pub fn dt(&self) -> f64 {
        1.0 / self.lambda
    }
}

const SIGMAS: [Sym; 4] = [Sym::SigmaE, Sym::SigmaX, Sym::SigmaQ, Sym::SigmaH];

fn sigma_by_suffix(key: &str, prefix: &str) -> Option<Sym> {
    let suffix = key.strip_prefix(prefix)?;
    SIGMAS.iter().copied().find(|s| s.name().strip_prefix("sigma_") == Some(suffix))
}

/// Reads a flat `key = value` file; `#` starts a comment.
///
/// Keys: `scheme`, `variant`, `experiment`, `grid` (e.g. `64 64`), `lambda`,
/// `sigma_x|e|q|h` or `s_x|e|q|h`, `cs2`, `rho0`, `e0`, `amplitude`,
/// `background`, `steps`, `record_every`, `exec` (`sequential|parallel`).
pub fn parse_config(text: &str) -> Result<SimConfig, SimError> {
    let mut cfg = SimConfig::new("", &[]);
    let mut seen_scheme = false;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| SimError::Config { line: n + 1, msg };
        let (key, value) = line.split_once('=').ok_or_else(|| bad("expected `key = value`".into()))?;
        let (key, value) = (key.trim(), value.trim());
        let num = |v: &str| v.parse::<f64>().map_err(|_| bad(format!("`{key}`: not a number: `{v}`")));
        let count = |v: &str| v.parse::<usize>().map_err(|_| bad(format!("`{key}`: not a count: `{v}`")));
        match key {
            "scheme" => {
                cfg.scheme = value.to_string();
                seen_scheme = true;
            }
            "variant" => cfg.variant = Some(value.to_string()),
            "experiment" => cfg.experiment = Some(value.parse().map_err(bad)?),
            "grid" => {
                cfg.grid = value
                    .split(|c: char| c.is_whitespace() || c == 'x' || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(count)
                    .collect::<Result<_, _>>()?;
            }
            "lambda" => cfg.lambda = num(value)?,
            "cs2" => cfg.cs2 = Some(num(value)?),
            "rho0" => cfg.rho0 = num(value)?,
            "e0" => cfg.e0 = num(value)?,
            "amplitude" => cfg.amplitude = num(value)?,
            "background" => cfg.background = num(value)?,
            "steps" => cfg.steps = count(value)?,
            "record_every" => cfg.record_every = count(value)?,
            "exec" => {
                cfg.exec = match value {
                    "sequential" => Exec::Sequential,
                    "parallel" => Exec::Parallel,
                    _ => return Err(bad(format!("unknown exec mode `{value}`"))),
                }
            }
            _ => {
                if let Some(sym) = sigma_by_suffix(key, "sigma_") {
                    let sigma = num(value)?;
                    cfg.rates.insert(sym, 1.0 / (sigma + 0.5));
                } else if let Some(sym) = sigma_by_suffix(key, "s_") {
                    cfg.rates.insert(sym, num(value)?);
                } else {
                    return Err(bad(format!("unknown key `{key}`")));
                }
            }
        }
    }
    if !seen_scheme {
        return Err(SimError::Config { line: 0, msg: "missing `scheme`".into() });
    }
    Ok(cfg)
}

//! Command-line front end. `run` does the work and reports an exit status;
//! `main` only parses arguments and maps the status to a process code.

mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use lbm_equilibria::{dump_equilibria, equilibrium_family, parse_equilibria};
use lbm_moments::{matrices_csv, matrices_json, SchemeMatrices};
use lbm_pde::{analyze, load_builtin, viscosity_table, PdeError};
use lbm_poly::{Sym, Vars};
use lbm_scheme::{builtin, builtin_names, parse_scheme};
use lbm_sim::{parse_config, run_experiment, series_csv, SimError};
use thiserror::Error;

pub use report::render_analysis;

/// Built-ins whose default equilibria fit Navier-Stokes exactly at second
/// order (thermal ones under their sigma identification).
pub const EXACT_FIT: [&str; 8] =
    ["d2q13-iso", "d3q33-iso", "d3q27-2-iso", "d2q17-th", "d2v17-th", "d2w17-th", "d3q33-th", "d3q27-2-th"];

#[derive(Parser, Debug)]
#[command(name = "lbm", version, about = "Equivalent-equation analysis and simulation of MRT lattice Boltzmann schemes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Derive the equivalent equations of a scheme and compare with Navier-Stokes.
    Analyze(AnalyzeArgs),
    /// Run a transport-coefficient experiment from a config file.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// CSV time series destination.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print M, M^-1 and the advection operators.
    DumpMatrices {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        model: Option<ModelArg>,
        #[arg(long)]
        variant: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Print the equilibrium polynomials of a built-in.
    DumpEquilibria {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        model: Option<ModelArg>,
        #[arg(long)]
        variant: Option<String>,
    },
    /// List the built-in schemes.
    ListSchemes,
}

#[derive(clap::Args, Debug)]
pub struct AnalyzeArgs {
    /// Built-in name, with or without the model suffix (`d3q19`, `d3q19-iso`).
    #[arg(long, required_unless_present = "scheme_file")]
    pub scheme: Option<String>,
    #[arg(long)]
    pub model: Option<ModelArg>,
    #[arg(long)]
    pub variant: Option<String>,
    /// Sigma identifications such as `sigma_q=sigma_x`, or `none`.
    #[arg(long, value_delimiter = ',')]
    pub sigma_constraints: Option<Vec<String>>,
    /// Scheme descriptor file instead of a built-in.
    #[arg(long, conflicts_with = "scheme")]
    pub scheme_file: Option<PathBuf>,
    /// Equilibrium file for `--scheme-file`; defaults to the built-in of the same name.
    #[arg(long, requires = "scheme_file")]
    pub equilibria_file: Option<PathBuf>,
    /// Also write the JSON report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    #[value(alias = "isothermal")]
    Iso,
    #[value(alias = "th")]
    Thermal,
}

impl ModelArg {
    fn suffix(self) -> &'static str {
        match self {
            ModelArg::Iso => "iso",
            ModelArg::Thermal => "th",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// The computation ran but contradicts what was expected of it.
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 2,
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Fit(_) | SimError::NonFinite { .. } | SimError::NonPositiveDensity { .. } => {
                CliError::Mismatch(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

/// Resolves `d3q19` / `d3q19-iso` / (`d3q19`, iso) to a built-in name.
pub fn resolve_scheme(name: &str, model: Option<ModelArg>) -> Result<String, CliError> {
    let known = |n: &str| builtin_names().any(|b| b == n);
    if known(name) {
        if let Some(m) = model {
            if !name.ends_with(&format!("-{}", m.suffix())) {
                return Err(usage(format!("scheme {name} does not match model {m:?}")));
            }
        }
        return Ok(name.to_string());
    }
    let candidates: Vec<String> = match model {
        Some(m) => vec![format!("{name}-{}", m.suffix())],
        None => ["iso", "th"].iter().map(|s| format!("{name}-{s}")).collect(),
    };
    let found: Vec<String> = candidates.into_iter().filter(|c| known(c)).collect();
    match found.len() {
        1 => Ok(found.into_iter().next().unwrap()),
        0 => Err(usage(format!("unknown scheme `{name}` (see list-schemes)"))),
        _ => Err(usage(format!("scheme `{name}` exists for both models; pass --model"))),
    }
}

fn parse_constraints(items: &[String]) -> Result<Vec<(Sym, Sym)>, CliError> {
    if items.iter().any(|s| s == "none") {
        return Ok(Vec::new());
    }
    items
        .iter()
        .map(|item| {
            let (a, b) = item.split_once('=').ok_or_else(|| usage(format!("bad sigma constraint `{item}`")))?;
            let sym = |t: &str| {
                Sym::from_name(t.trim())
                    .filter(|s| s.is_sigma())
                    .ok_or_else(|| usage(format!("`{t}` is not a sigma parameter")))
            };
            Ok((sym(a)?, sym(b)?))
        })
        .collect()
}

fn pde_usage(e: PdeError) -> CliError {
    usage(e)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(args) => run_analyze(args, out),
        Command::Simulate { config, out: csv } => {
            let text = fs::read_to_string(&config).map_err(|e| usage(format!("{}: {e}", config.display())))?;
            let cfg = parse_config(&text)?;
            if cfg.experiment.is_none() {
                return Err(usage("config has no `experiment`"));
            }
            let report = run_experiment(&cfg)?;
            if let Some(path) = csv {
                fs::write(path, series_csv(&report))?;
            }
            writeln!(out, "{}", report.summary())?;
            Ok(())
        }
        Command::DumpMatrices { scheme, model, variant, format } => {
            let name = resolve_scheme(&scheme, model)?;
            let s = lbm_scheme::builtin_variant(&name, variant.as_deref()).map_err(usage)?;
            let mats = SchemeMatrices::build(&s).map_err(usage)?;
            match format {
                Format::Csv => write!(out, "{}", matrices_csv(&s, &mats))?,
                Format::Json => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&matrices_json(&s, &mats)).unwrap())?
                }
            }
            Ok(())
        }
        Command::DumpEquilibria { scheme, model, variant } => {
            let name = resolve_scheme(&scheme, model)?;
            let (_, eq) = load_builtin(&name, variant.as_deref()).map_err(pde_usage)?;
            write!(out, "{}", dump_equilibria(&eq))?;
            Ok(())
        }
        Command::ListSchemes => {
            writeln!(out, "{:<12} {:>3} {:>3} {:>3}  {:<10} variants", "name", "dim", "q", "N", "model")?;
            for name in builtin_names() {
                let s = builtin(name).map_err(usage)?;
                let eq = equilibrium_family(&s, None).map_err(usage)?;
                let mut variants: Vec<&str> = s.variant_names().chain(eq.variant_names()).collect();
                variants.sort_unstable();
                variants.dedup();
                writeln!(
                    out,
                    "{:<12} {:>3} {:>3} {:>3}  {:<10} {}",
                    name,
                    s.dim(),
                    s.q(),
                    s.n_conserved(),
                    s.model().name(),
                    if variants.is_empty() { "-".to_string() } else { variants.join(",") }
                )?;
            }
            Ok(())
        }
    }
}

fn run_analyze(args: AnalyzeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (s, eq, builtin_name) = match (&args.scheme_file, &args.scheme) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let s = parse_scheme(&text).map_err(usage)?;
            let eq = match &args.equilibria_file {
                Some(p) => {
                    let t = fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
                    parse_equilibria(&t, &s).map_err(usage)?
                }
                None => equilibrium_family(&s, None).map_err(usage)?,
            };
            let eq = match args.variant.as_deref() {
                Some(v) => eq.with_variant(v).map_err(usage)?,
                None => eq,
            };
            (s, eq, None)
        }
        (None, Some(name)) => {
            let name = resolve_scheme(name, args.model)?;
            let (s, eq) = load_builtin(&name, args.variant.as_deref()).map_err(pde_usage)?;
            (s, eq, Some(name))
        }
        (None, None) => return Err(usage("one of --scheme or --scheme-file is required")),
    };

    let mut vis = viscosity_table(&s).ok();
    if let (Some(v), Some(items)) = (vis.as_mut(), &args.sigma_constraints) {
        v.constraints = parse_constraints(items)?;
    }
    let a = analyze(&s, &eq, vis.as_ref()).map_err(usage)?;
    write!(out, "{}", render_analysis(&a, eq.cs2()))?;
    if let Some(path) = &args.json {
        fs::write(path, serde_json::to_string_pretty(&a.to_json()).unwrap() + "\n")?;
    }

    // Variants are transcriptions kept for comparison; only the defaults
    // carry an expectation.
    if args.variant.is_some() {
        return Ok(());
    }
    if !a.euler.is_zero() {
        return Err(CliError::Mismatch(format!("{}: Euler residual is not zero", a.scheme)));
    }
    let expect_exact = builtin_name.is_some_and(|n| EXACT_FIT.contains(&n.as_str()));
    if expect_exact && args.sigma_constraints.is_none() && !a.ns.as_ref().is_some_and(|r| r.is_zero()) {
        return Err(CliError::Mismatch(format!("{}: expected an exact Navier-Stokes fit", a.scheme)));
    }
    Ok(())
}

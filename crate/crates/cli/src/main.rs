//! `twistor`: classify almost Hermitian structures on homogeneous 4-manifolds as
//! sections of the twistor space.
//!
//! Exit codes: 0 success, 1 I/O or internal error, 2 invalid input or
//! parameters, 3 unparseable input document.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use twistor_core::catalog::{self, PresetParams, PRESET_NAMES};
use twistor_core::io::{InputError, InputSpec, Report, SweepRow};
use twistor_core::{classify, Analysis, GeometryError, Settings, Tolerance};

const SWEEP_SCHEMA: &str = "twistor-sweep/1";

#[derive(Parser)]
#[command(name = "twistor", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on an input document or a catalog preset.
    Classify(ClassifyArgs),
    /// Classify every point of a preset parameter grid.
    Sweep(SweepArgs),
    /// List the catalog presets and their parameters.
    Presets,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct Common {
    /// Twistor metric scale t > 0.
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Relative zero tolerance.
    #[arg(long, env = "TWISTOR_TOL", default_value_t = twistor_core::tolerance::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct ClassifyArgs {
    /// JSON input document (structure constants and J).
    #[arg(required_unless_present = "preset", conflicts_with = "preset")]
    path: Option<PathBuf>,
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(PRESET_NAMES))]
    preset: Option<String>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    eps1: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    eps2: f64,
    /// Angle of the Kodaira almost Kähler structure, radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    lie_s: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    lie_t: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(PRESET_NAMES))]
    preset: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,-1")]
    eps1: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,-1")]
    eps2: Vec<f64>,
    /// Explicit angles; overrides --phi-steps.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    phi: Vec<f64>,
    /// Number of equally spaced angles in [0, 2pi).
    #[arg(long, default_value_t = 8)]
    phi_steps: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,1,2,3")]
    lie_s: Vec<f64>,
    /// Lie-group parameter t; must be non-zero.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "2,1,-1,0.5")]
    lie_t: Vec<f64>,
    /// Twistor metric scales.
    #[arg(long = "t", value_delimiter = ',', allow_hyphen_values = true, default_value = "1")]
    t: Vec<f64>,
    #[arg(long, env = "TWISTOR_TOL", default_value_t = twistor_core::tolerance::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

enum Failure {
    Parse(String),
    Invalid(String),
    Other(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Parse(_) => 3,
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        if e.is_parse() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn tolerance(numeric: f64) -> Result<Tolerance, Failure> {
    if !(numeric > 0.0 && numeric.is_finite()) {
        return Err(Failure::Invalid(format!("tolerance must be a positive number, got {numeric}")));
    }
    Ok(Tolerance::with_numeric(numeric))
}

fn check_t(t: f64) -> Result<(), Failure> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Failure::Invalid(format!("twistor scale t must be positive, got {t}")));
    }
    Ok(())
}

fn classify_cmd(args: &ClassifyArgs) -> Result<String, Failure> {
    let c = &args.common;
    check_t(c.t)?;
    let base = tolerance(c.tol)?;
    let (manifold, j_table, tol, preset) = match (&args.preset, &args.path) {
        (Some(name), _) => {
            let params = PresetParams {
                eps1: args.eps1,
                eps2: args.eps2,
                phi: args.phi,
                lie_s: args.lie_s,
                lie_t: args.lie_t,
            };
            let p = catalog::by_name(name, &params)?;
            (p.manifold.clone(), p.j_table, base, Some(p))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Other(anyhow::anyhow!("cannot read {}: {e}", path.display())))?;
            let v = InputSpec::parse(&text)?.validate(base)?;
            (v.manifold, v.j_table, v.tol, None)
        }
        (None, None) => unreachable!("clap requires a path or a preset"),
    };
    let a = Analysis::run(&manifold, &j_table, &Settings { t: c.t, tol })?;
    let verdict = classify(&a);
    let report = Report::new(&a, &verdict, preset.as_ref());
    Ok(match c.format {
        Format::Json => report.to_json(),
        Format::Table => render::report(&report),
    })
}

#[derive(Serialize)]
struct SweepOutput {
    schema: &'static str,
    tol: f64,
    rows: Vec<SweepRow>,
}

fn sweep_grid(args: &SweepArgs) -> Vec<PresetParams> {
    let d = PresetParams::default();
    let phis = if args.phi.is_empty() { catalog::phi_grid(args.phi_steps) } else { args.phi.clone() };
    match args.preset.as_str() {
        "kodaira-hermitian" => args
            .eps1
            .iter()
            .flat_map(|&eps1| args.eps2.iter().map(move |&eps2| PresetParams { eps1, eps2, ..d }))
            .collect(),
        "kodaira-ak" => args
            .eps1
            .iter()
            .flat_map(|&eps1| args.eps2.iter().map(move |&eps2| (eps1, eps2)))
            .flat_map(|(eps1, eps2)| phis.iter().map(move |&phi| PresetParams { eps1, eps2, phi, ..d }))
            .collect(),
        "lie-group" => args
            .lie_s
            .iter()
            .flat_map(|&lie_s| args.lie_t.iter().map(move |&lie_t| PresetParams { lie_s, lie_t, ..d }))
            .collect(),
        _ => vec![d],
    }
}

fn sweep_cmd(args: &SweepArgs) -> Result<String, Failure> {
    let tol = tolerance(args.tol)?;
    for &t in &args.t {
        check_t(t)?;
    }
    // domain errors surface before any work is scheduled, whatever the grid order
    let grid = sweep_grid(args);
    for params in &grid {
        catalog::by_name(&args.preset, params)?;
    }
    let points: Vec<(PresetParams, f64)> =
        grid.into_iter().flat_map(|p| args.t.iter().map(move |&t| (p, t))).collect();
    let rows = points
        .par_iter()
        .map(|(params, t)| -> Result<SweepRow, Failure> {
            let p = catalog::by_name(&args.preset, params)?;
            let a = Analysis::run(&p.manifold, &p.j_table, &Settings { t: *t, tol })?;
            Ok(SweepRow::new(&p, &a, &classify(&a)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match args.format {
        Format::Json => serde_json::to_string_pretty(&SweepOutput { schema: SWEEP_SCHEMA, tol: tol.numeric, rows })
            .map_err(|e| Failure::Other(e.into()))?,
        Format::Table => render::sweep(&rows, tol.numeric),
    })
}

fn presets_cmd() -> String {
    let mut out = String::new();
    for name in PRESET_NAMES {
        let params = match name {
            "kodaira-hermitian" => "--eps1 ±1 --eps2 ±1",
            "kodaira-ak" => "--eps1 ±1 --eps2 ±1 --phi <radians>",
            "lie-group" => "--lie-s <real> --lie-t <real, non-zero>",
            _ => "(none)",
        };
        out.push_str(&format!("{name:<18} {params}\n"));
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(args) => classify_cmd(args),
        Command::Sweep(args) => sweep_cmd(args),
        Command::Presets => Ok(presets_cmd()),
    };
    match result {
        Ok(text) => {
            println!("{}", text.trim_end());
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Parse(m) | Failure::Invalid(m) => eprintln!("error: {m}"),
                Failure::Other(e) => eprintln!("error: {e:#}"),
            }
            ExitCode::from(f.code())
        }
    }
}

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use micz_core::verify::Suite;
use micz_core::{Error, Geometry, HalfInt, PhysParams};
use serde::Serialize;
use serde_json::json;

use output::Format;

#[derive(Parser, Debug, Serialize)]
#[command(
    name = "micz",
    version,
    about = "Spectra and wavefunctions of the generalized MICZ-Kepler system"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase", tag = "command")]
pub enum Command {
    /// Energy levels up to a principal number.
    Spectrum(SpectrumArgs),
    /// Samples of one state's wavefunction.
    Wavefunction(WavefunctionArgs),
    /// Run verification suites; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Curved-space energies approaching the flat value as R0 grows.
    Limit(LimitArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Physics {
    #[arg(long, default_value = "flat")]
    pub geometry: Geometry,
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    pub e2: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lambda1: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lambda2: f64,
    /// Monopole number, e.g. `1/2` or `0.5`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub s: HalfInt,
    /// Curvature radius R0 (ignored in flat space).
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
}

impl Physics {
    pub fn params(&self) -> PhysParams {
        PhysParams::atomic(self.geometry)
            .with_units(self.mu, self.hbar, self.e2)
            .with_lambdas(self.lambda1, self.lambda2)
            .with_monopole(self.s)
            .with_radius(self.radius)
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout if absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct StateArgs {
    #[arg(long)]
    pub n: HalfInt,
    #[arg(long)]
    pub j: HalfInt,
    #[arg(long, allow_hyphen_values = true)]
    pub m: HalfInt,
}

#[derive(Args, Debug, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub physics: Physics,
    #[arg(long)]
    pub n_max: HalfInt,
    /// Keep only this j.
    #[arg(long)]
    pub j: Option<HalfInt>,
    /// Keep only this m.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<HalfInt>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub physics: Physics,
    #[command(flatten)]
    pub state: StateArgs,
    /// Explicit sample points of the radial variable (r, chi or tau).
    #[arg(long, value_delimiter = ',')]
    pub points: Vec<f64>,
    /// Number of evenly spaced interior points on `(0, end)` when no
    /// explicit points are given.
    #[arg(long, default_value_t = 101)]
    pub count: usize,
    /// Right end of the grid; defaults to pi on the sphere and to the extent
    /// of the density elsewhere.
    #[arg(long)]
    pub end: Option<f64>,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub phi: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    /// Suites to run (repeatable); all when absent.
    #[arg(long = "suite")]
    pub suites: Vec<Suite>,
    /// Restrict geometry-dependent checks.
    #[arg(long)]
    pub geometry: Option<Geometry>,
    /// Random states per geometry.
    #[arg(long, default_value_t = 60)]
    pub states: usize,
    #[arg(long, default_value_t = 20_240_601)]
    pub seed: u64,
    /// Coarsest eigen-solver grid.
    #[arg(long, default_value_t = 4000)]
    pub cells: usize,
    /// Random instances per identity.
    #[arg(long, default_value_t = 100)]
    pub instances: usize,
    /// Global tolerance multiplier.
    #[arg(long, env = "MICZ_TOL_OVERRIDE", default_value_t = 1.0)]
    pub tolerance_scale: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct LimitArgs {
    #[command(flatten)]
    pub physics: Physics,
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_delimiter = ',', default_value = "10,20,40,80")]
    pub radii: Vec<f64>,
    #[command(flatten)]
    pub output: Output,
}

/// Failure of a command, mapped onto the exit status.
#[derive(Debug)]
pub enum Failure {
    /// Invalid input: exit 2.
    Invalid(Error),
    /// Numerical instability detected: exit 3.
    Unstable(Error),
    /// Verification checks failed: exit 1.
    ChecksFailed(usize),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NumericInstability { .. } | Error::Range { .. } | Error::QuadratureFailed { .. } => {
                Failure::Unstable(e)
            }
            e => Failure::Invalid(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain { .. } => "domain",
        Error::Invalid(_) => "invalid-state",
        Error::NoBoundState { .. } => "no-bound-state",
        Error::NumericInstability { .. } => "numeric-instability",
        Error::Range { .. } => "range",
        Error::Singularity(_) => "singularity",
        Error::ProjectivePole => "projective-pole",
        Error::QuadratureFailed { .. } => "quadrature-failed",
        Error::Config(_) => "config",
        Error::WrongGeometry { .. } => "wrong-geometry",
    }
}

fn report(e: &Error) {
    let mut msg = json!({ "error": error_kind(e), "message": e.to_string() });
    if let Error::Invalid(v) = e {
        msg["violations"] = json!(v);
    }
    eprintln!("{msg}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = serde_json::to_value(&cli.command).expect("config serializes");
    let result = match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a, &config),
        Command::Wavefunction(a) => commands::wavefunction(a, &config),
        Command::Verify(a) => commands::verify(a, &config),
        Command::Limit(a) => commands::limit(a, &config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::ChecksFailed(n)) => {
            eprintln!("{n} check(s) failed");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(e)) => {
            report(&e);
            ExitCode::from(2)
        }
        Err(Failure::Unstable(e)) => {
            report(&e);
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) => {
            eprintln!("{}", json!({ "error": "io", "message": e.to_string() }));
            ExitCode::from(1)
        }
    }
}

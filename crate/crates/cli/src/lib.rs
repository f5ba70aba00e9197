//! Command-line front end for the shift-operator analyses.
//!
//! Three subcommands share one flag set:
//! - `analyze`: root classification, norms, isometry sweep and the
//!   circulant-versus-triangular inverse comparison.
//! - `invert`: causal or anticausal reciprocal with a certified tail bound.
//! - `simulate`: seeded MA simulation with reconstruction, divergence and
//!   ergodicity tables.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 input error, 3 borderline verdict,
//! 4 uncertified tail.

mod commands;
pub mod format;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use shiftop_core::{Error, WienerElement64};

pub use commands::{
    cmd_analyze, cmd_invert, cmd_simulate, AnalyzeOutcome, AnalyzeReport, InvertOutcome,
    SimulateOutcome,
};

/// Environment variable that overrides `--seed` when set.
pub const SEED_ENV: &str = "SHIFTOP_SEED";

/// Coefficient budget for `invert` and the inverse in `analyze` reports.
pub const MAX_INVERSE_LEN: usize = 100_000;

pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const BORDERLINE: i32 = 3;
    pub const UNCERTIFIED: i32 = 4;
}

#[derive(Debug, Parser)]
#[command(name = "shiftop", version, about = "Invertibility analysis of transfer functions through shift-operator compressions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Roots, norms, isometry sweep and inverse-norm asymmetry (report.json, isometry.csv, asymmetry.csv).
    Analyze(Args),
    /// Reciprocal of the transfer function with a certified tail (inverse.json).
    Invert(Args),
    /// Seeded MA simulation with reconstruction or divergence and ergodicity tables.
    Simulate(Args),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    /// Causal when every root is outside the circle, anticausal when every root is inside.
    Auto,
    Causal,
    Anticausal,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    /// Real coefficients a_0,a_1,... of a causal transfer function.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "coeffs_file", conflicts_with = "coeffs_file")]
    pub coeffs: Option<String>,
    /// JSON coefficient file {"offset": n, "coeffs": [[re, im], ...]}.
    #[arg(long, value_name = "PATH")]
    pub coeffs_file: Option<PathBuf>,
    /// Compression dimensions, strictly increasing.
    #[arg(long, value_delimiter = ',', default_value = "4,16,64,256")]
    pub dims: Vec<usize>,
    /// Circle grid size for sup norms (power of two, at least 16).
    #[arg(long, default_value_t = 1 << 16)]
    pub grid: usize,
    /// Root classification tolerance, in [1e-12, 1e-4].
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Certified tail bound requested from the inverters.
    #[arg(long, default_value_t = 1e-10)]
    pub eps: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Innovation standard deviation.
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Simulated path length.
    #[arg(long = "T", value_name = "T_LEN", default_value_t = 10_000)]
    pub t_len: usize,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Side::Auto)]
    pub side: Side,
    /// Largest AR lag used in reconstruction and divergence tables.
    #[arg(long, default_value_t = 20)]
    pub max_lag: usize,
}

/// Validated parameters for one command.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub transfer: WienerElement64,
    pub dims: Vec<usize>,
    pub grid_size: usize,
    pub tol: f64,
    pub eps: f64,
    pub seed: u64,
    pub sigma: f64,
    pub t_len: usize,
    pub output_dir: PathBuf,
    pub side: Side,
    pub max_lag: usize,
}

impl AnalysisConfig {
    /// Defaults matching the command-line flags.
    pub fn new(transfer: WienerElement64) -> Self {
        Self {
            transfer,
            dims: vec![4, 16, 64, 256],
            grid_size: 1 << 16,
            tol: 1e-9,
            eps: 1e-10,
            seed: 0,
            sigma: 1.0,
            t_len: 10_000,
            output_dir: PathBuf::from("."),
            side: Side::Auto,
            max_lag: 20,
        }
    }

    /// Builds and validates a config; `seed_override` is the value of
    /// [`SEED_ENV`] if set.
    pub fn from_args(args: &Args, seed_override: Option<&str>) -> Result<Self, CliError> {
        let transfer = match (&args.coeffs, &args.coeffs_file) {
            (Some(text), None) => parse_inline(text)?,
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                WienerElement64::from_json(&text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
            }
            _ => return Err(CliError::Input("give exactly one of --coeffs or --coeffs-file".into())),
        };
        let seed = match seed_override.map(str::trim).filter(|s| !s.is_empty()) {
            Some(s) => s
                .parse()
                .map_err(|_| CliError::Input(format!("{SEED_ENV}: '{s}' is not an unsigned integer")))?,
            None => args.seed,
        };
        let config = Self {
            transfer,
            dims: args.dims.clone(),
            grid_size: args.grid,
            tol: args.tol,
            eps: args.eps,
            seed,
            sigma: args.sigma,
            t_len: args.t_len,
            output_dir: args.out.clone(),
            side: args.side,
            max_lag: args.max_lag,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Input(m));
        if self.dims.is_empty() || self.dims[0] == 0 {
            return bad("--dims: dimensions must be positive".into());
        }
        if self.dims.windows(2).any(|w| w[0] >= w[1]) {
            return bad("--dims: dimensions must be strictly increasing".into());
        }
        if self.grid_size < 16 || !self.grid_size.is_power_of_two() {
            return bad(format!("--grid: {} is not a power of two >= 16", self.grid_size));
        }
        if !(1e-12..=1e-4).contains(&self.tol) {
            return bad(format!("--tol: {} is outside [1e-12, 1e-4]", self.tol));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return bad(format!("--eps: {} must be positive", self.eps));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return bad(format!("--sigma: {} must be positive", self.sigma));
        }
        if self.t_len == 0 {
            return bad("--T: path length must be at least 1".into());
        }
        Ok(())
    }
}

/// Parses `"1,-2"` into the real polynomial `1 − 2z`.
pub fn parse_inline(text: &str) -> Result<WienerElement64, CliError> {
    let mut coeffs = Vec::new();
    for (i, field) in text.split(',').enumerate() {
        let field = field.trim();
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => coeffs.push(v),
            _ => {
                return Err(CliError::Input(format!(
                    "--coeffs: entry {i} ('{field}') is not a finite real number"
                )))
            }
        }
    }
    Ok(WienerElement64::from_real(&coeffs))
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Input(String),
    Borderline(String),
    Uncertified(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => exit::INPUT,
            CliError::Borderline(_) => exit::BORDERLINE,
            CliError::Uncertified(_) => exit::UNCERTIFIED,
            CliError::Io(_) => exit::FAILURE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Borderline(m) => write!(f, "borderline verdict: {m}"),
            CliError::Uncertified(m) => write!(f, "uncertified tail: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotInvertible {
                verdict: shiftop_core::Verdict::Borderline,
                ..
            } => CliError::Borderline(format!("{e}; a unit root has no certified inverse")),
            Error::NotAnticausallyInvertible { on_circle, .. } if on_circle > 0 => {
                CliError::Borderline(format!("{e}; a unit root has no certified inverse"))
            }
            Error::TailNotCertified { .. } => CliError::Uncertified(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Runs one command and returns the human summary lines.
pub fn execute(cli: Cli, seed_override: Option<&str>) -> Result<Vec<String>, CliError> {
    match cli.command {
        Command::Analyze(args) => {
            let cfg = AnalysisConfig::from_args(&args, seed_override)?;
            Ok(cmd_analyze(&cfg)?.summary())
        }
        Command::Invert(args) => {
            let cfg = AnalysisConfig::from_args(&args, seed_override)?;
            Ok(cmd_invert(&cfg)?.summary())
        }
        Command::Simulate(args) => {
            let cfg = AnalysisConfig::from_args(&args, seed_override)?;
            Ok(cmd_simulate(&cfg)?.summary())
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::SUCCESS };
            let _ = e.print();
            return code;
        }
    };
    let seed = std::env::var(SEED_ENV).ok();
    match execute(cli, seed.as_deref()) {
        Ok(lines) => {
            for line in lines {
                println!("{line}");
            }
            exit::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

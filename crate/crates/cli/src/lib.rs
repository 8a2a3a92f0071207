//! Command-line front end: argument model, dispatch and report envelopes.

mod commands;
pub mod report;
pub mod source;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use framekit::{FrameError, Tolerances};
use serde_json::Value;

use crate::source::Source;

/// Seed used when neither `--seed` nor `FRAMEKIT_SEED` is given.
pub const DEFAULT_SEED: u64 = 42;
pub const SEED_ENV: &str = "FRAMEKIT_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "framekit",
    version,
    about = "Finite-dimensional frame theory laboratory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every randomized step [env: FRAMEKIT_SEED, default 42]
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true)]
    pub tol_eigen: Option<f64>,
    #[arg(long, global = true)]
    pub tol_residual: Option<f64>,
    #[arg(long, global = true)]
    pub tol_rank: Option<f64>,
    #[arg(long, global = true)]
    pub tol_dual: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Gallery family, e.g. `tight-mb`, `onb:3`, `random:3,5,7`
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub gallery: Option<String>,
    /// Frame file in the framekit-v1 JSON format
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Truncation level for generated families
    #[arg(long = "K")]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct DualArgs {
    /// Dual family from the gallery, materialized at the same `--K`
    #[arg(long, conflicts_with = "dual_input")]
    pub dual_gallery: Option<String>,
    /// Dual family from a frame file
    #[arg(long)]
    pub dual_input: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Frame bounds, rank, excess and a randomized check of the frame inequality
    Analyze {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Certify a dual pair (canonical dual when none is given)
    DualCheck {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        dual: DualArgs,
        /// Replace the dual at the zero slots of a zero-padded family by this vector
        #[arg(long)]
        zero_pad_w: Option<String>,
    },
    /// Build an alternative dual reproducing the given coefficients
    Realize {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Double the first coefficient with a nonzero vector before realizing
        #[arg(long)]
        shift: bool,
    },
    /// Partial-sum and rearrangement diagnostics of a series
    Converge {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        dual: DualArgs,
        /// Coefficients of `Σ c_n x_n`
        #[arg(long, allow_hyphen_values = true, conflicts_with = "probe")]
        coeffs: Option<String>,
        /// Limit of the coefficient series (defaults to the full sum)
        #[arg(long, allow_hyphen_values = true, requires = "coeffs")]
        limit: Option<String>,
        /// Expand `Σ ⟨p, y_n⟩ x_n` for this probe `p`
        #[arg(long, allow_hyphen_values = true)]
        probe: Option<String>,
        /// Comma-separated cut list (default: ten cuts over the top decade)
        #[arg(long)]
        cuts: Option<String>,
        #[arg(long, default_value_t = 16)]
        budget: usize,
    },
    /// Excess, removable set and near-Riesz classification
    Excess {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Moment space and, optionally, membership of a coefficient sequence
    Moment {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
    },
    /// Materialize a gallery family and optionally save it
    Gallery {
        spec: String,
        #[arg(long = "K")]
        k: Option<usize>,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// One-shot reproduction of the conditionally convergent dual pair
    #[command(name = "reproduce-example31")]
    ReproduceExample31 {
        #[arg(long = "K", default_value_t = 201)]
        k: usize,
        #[arg(long, default_value_t = 16)]
        budget: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::DualCheck { .. } => "dual-check",
            Command::Realize { .. } => "realize",
            Command::Converge { .. } => "converge",
            Command::Excess { .. } => "excess",
            Command::Moment { .. } => "moment",
            Command::Gallery { .. } => "gallery",
            Command::ReproduceExample31 { .. } => "reproduce-example31",
        }
    }
}

impl FamilyArgs {
    pub fn source(&self) -> Source {
        match (&self.gallery, &self.input) {
            (_, Some(p)) => Source::File(p.clone()),
            (Some(g), None) => Source::Gallery(g.clone()),
            // clap enforces one of the two.
            (None, None) => unreachable!("family source is required"),
        }
    }
}

impl DualArgs {
    pub fn source(&self) -> Option<Source> {
        match (&self.dual_gallery, &self.dual_input) {
            (_, Some(p)) => Some(Source::File(p.clone())),
            (Some(g), None) => Some(Source::Gallery(g.clone())),
            (None, None) => None,
        }
    }
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub tol: Tolerances,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    /// Parses command-line arguments (including the program name). The seed
    /// comes from `--seed`, then `env_seed`, then [`DEFAULT_SEED`].
    pub fn parse_from<I, T>(args: I, env_seed: Option<&str>) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        let seed = match (cli.seed, env_seed) {
            (Some(s), _) => s,
            (None, Some(text)) => text.trim().parse().map_err(|_| {
                clap::Error::raw(
                    clap::error::ErrorKind::InvalidValue,
                    format!("{SEED_ENV} must be an unsigned integer, got `{text}`\n"),
                )
            })?,
            (None, None) => DEFAULT_SEED,
        };
        let mut tol = Tolerances::default();
        let overrides = [
            (cli.tol_eigen, &mut tol.eigen),
            (cli.tol_residual, &mut tol.residual),
            (cli.tol_rank, &mut tol.rank),
            (cli.tol_dual, &mut tol.dual),
        ];
        for (value, slot) in overrides {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(clap::Error::raw(
                        clap::error::ErrorKind::InvalidValue,
                        format!("tolerances must be positive and finite, got {v}\n"),
                    ));
                }
                *slot = v;
            }
        }
        Ok(Self {
            command: cli.command,
            seed,
            tol,
            format: cli.format,
            output: cli.output,
        })
    }
}

/// Failure of a command: a mathematical precondition or a usage problem.
#[derive(Debug)]
pub enum CliError {
    Domain(FrameError),
    Usage(String),
}

impl From<FrameError> for CliError {
    fn from(e: FrameError) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.name(),
            CliError::Usage(_) => "InvalidArgument",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Domain(e) => e.to_string(),
            CliError::Usage(m) => m.clone(),
        }
    }

    /// 2 for domain errors, 1 for I/O, file-format and argument errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(e) if !e.is_io() => 2,
            _ => 1,
        }
    }
}

/// Exit status and rendered report of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: String,
    /// The report as a JSON value, before formatting.
    pub value: Value,
    /// The report went to the `--output` file.
    pub written: bool,
}

/// Runs the command and renders its report. Nothing is written to disk
/// except by `gallery --save`; see [`run`] for the `--output` handling.
pub fn execute(config: &RunConfig) -> Outcome {
    let result = commands::dispatch(config);
    let exit_code = match &result {
        Ok(_) => 0,
        Err(e) => e.exit_code(),
    };
    let value = report::envelope(config.command.name(), config.seed, result);
    let report = report::render(&value, config.format);
    Outcome {
        exit_code,
        report,
        value,
        written: false,
    }
}

/// Executes and writes the report to `--output`, or leaves it in the
/// outcome for the caller to print. A failed write turns into exit code 1.
pub fn run(config: &RunConfig) -> Outcome {
    let mut outcome = execute(config);
    if let Some(path) = &config.output {
        match fs::write(path, &outcome.report) {
            Ok(()) => outcome.written = true,
            Err(e) => {
                let err = CliError::Domain(FrameError::Io(e));
                outcome.exit_code = err.exit_code();
                outcome.value = report::envelope(config.command.name(), config.seed, Err(err));
                outcome.report = report::render(&outcome.value, config.format);
            }
        }
    }
    outcome
}

//! Command-line flags, the optional TOML config file, and their merge into a [`RunConfig`].

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;

use crate::CliError;

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_SHOTS: usize = 1000;
pub const DEFAULT_GRID: usize = 20;
pub const SEED_ENV: &str = "TELECANON_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "telecanon",
    version,
    about = "Perfect teleportation through canonical three-qubit channels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build channel and basis, extract the transformation operators and certify perfection
    Verify {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Verify, then run seeded teleportation sessions
    Teleport {
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        session: SessionArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evaluate a uniform grid over the (a, b) region of one canonical family
    Sweep {
        #[arg(long)]
        form: Option<FormArg>,
        /// Grid points per axis
        #[arg(long)]
        grid: Option<usize>,
        /// Draw δ, λ, γ uniformly per point (seeded)
        #[arg(long)]
        random_phases: bool,
        /// Emit the table as CSV instead of text
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Verify and teleport through one of the named channels
    Demo {
        name: DemoName,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<f64>,
        #[command(flatten)]
        session: SessionArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct ChannelArgs {
    /// 1, 2, general, ghz, w1 or bell
    #[arg(long)]
    pub form: Option<FormArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// Eight comma-separated complex amplitudes for `--form general`, e.g. `0.7071,0,0,0,0,0,0,0.7071i`
    #[arg(long, allow_hyphen_values = true)]
    pub amps: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SessionArgs {
    /// Number of sessions (random inputs unless --alpha/--beta are given)
    #[arg(long)]
    pub shots: Option<usize>,
    /// Amplitude of |0⟩ in the input, e.g. `0.6` or `0.6+0.8i`
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Amplitude of |1⟩ in the input
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Include per-session traces in the report
    #[arg(long)]
    pub traces: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// TOML file with the same field names as the long flags
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Machine-readable JSON on stdout
    #[arg(long)]
    pub json: bool,
    /// Include the eight basis elements in the report
    #[arg(long)]
    pub dump_basis: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(try_from = "FormValue")]
pub enum FormArg {
    Form1,
    Form2,
    General,
    Ghz,
    W1,
    Bell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    Ghz,
    W1,
    Bell,
}

impl FromStr for FormArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "form1" => Ok(FormArg::Form1),
            "2" | "form2" => Ok(FormArg::Form2),
            "general" => Ok(FormArg::General),
            "ghz" => Ok(FormArg::Ghz),
            "w1" => Ok(FormArg::W1),
            "bell" => Ok(FormArg::Bell),
            other => Err(format!(
                "unknown form `{other}` (expected 1, 2, general, ghz, w1, bell)"
            )),
        }
    }
}

impl fmt::Display for FormArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FormArg::Form1 => "1",
            FormArg::Form2 => "2",
            FormArg::General => "general",
            FormArg::Ghz => "ghz",
            FormArg::W1 => "w1",
            FormArg::Bell => "bell",
        };
        f.write_str(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FormValue {
    Int(i64),
    Str(String),
}

impl TryFrom<FormValue> for FormArg {
    type Error = String;

    fn try_from(v: FormValue) -> Result<Self, Self::Error> {
        match v {
            FormValue::Int(i) => i.to_string().parse(),
            FormValue::Str(s) => s.parse(),
        }
    }
}

/// Contents of `--config <path>`.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub struct FileConfig {
    pub form: Option<FormArg>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub delta: Option<f64>,
    pub lambda: Option<f64>,
    pub gamma: Option<f64>,
    pub amps: Option<Vec<String>>,
    pub shots: Option<usize>,
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub traces: Option<bool>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub json: Option<bool>,
    pub dump_basis: Option<bool>,
    pub grid: Option<usize>,
    pub random_phases: Option<bool>,
    pub csv: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Verify,
    Teleport,
    Sweep,
    Demo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputChoice {
    Explicit(Complex64, Complex64),
    Random,
}

/// Fully merged settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub form: FormArg,
    pub a: f64,
    pub b: f64,
    pub delta: f64,
    pub lambda: f64,
    pub gamma: f64,
    pub amps: Option<[Complex64; 8]>,
    pub input: InputChoice,
    pub shots: usize,
    pub traces: bool,
    pub seed: u64,
    pub tol: f64,
    pub output: OutputMode,
    pub dump_basis: bool,
    pub grid: usize,
    pub random_phases: bool,
}

fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    Complex64::from_str(&cleaned)
        .map_err(|_| CliError::Usage(format!("cannot parse complex number `{s}`")))
}

fn parse_amps(items: &[String]) -> Result<[Complex64; 8], CliError> {
    let parsed = items
        .iter()
        .map(|s| parse_complex(s))
        .collect::<Result<Vec<_>, _>>()?;
    parsed
        .try_into()
        .map_err(|v: Vec<_>| CliError::Usage(format!("--amps needs 8 amplitudes, got {}", v.len())))
}

impl RunConfig {
    /// Merge flags over the config file; the seed falls back to `env_seed`, then [`DEFAULT_SEED`].
    pub fn from_cli(cli: Cli, env_seed: Option<&str>) -> Result<Self, CliError> {
        let (command, channel, session, common, sweep, demo) = match cli.command {
            Command::Verify { channel, common } => (
                CommandKind::Verify,
                channel,
                SessionArgs::default(),
                common,
                None,
                None,
            ),
            Command::Teleport {
                channel,
                session,
                common,
            } => (CommandKind::Teleport, channel, session, common, None, None),
            Command::Sweep {
                form,
                grid,
                random_phases,
                csv,
                common,
            } => {
                let channel = ChannelArgs {
                    form,
                    ..ChannelArgs::default()
                };
                (
                    CommandKind::Sweep,
                    channel,
                    SessionArgs::default(),
                    common,
                    Some((grid, random_phases, csv)),
                    None,
                )
            }
            Command::Demo {
                name,
                gamma,
                session,
                common,
            } => {
                let form = match name {
                    DemoName::Ghz => FormArg::Ghz,
                    DemoName::W1 => FormArg::W1,
                    DemoName::Bell => FormArg::Bell,
                };
                let channel = ChannelArgs {
                    form: Some(form),
                    gamma,
                    ..ChannelArgs::default()
                };
                (
                    CommandKind::Demo,
                    channel,
                    session,
                    common,
                    None,
                    Some(form),
                )
            }
        };

        let file = match &common.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };

        let form = demo
            .or(channel.form)
            .or(file.form)
            .unwrap_or(FormArg::Form1);

        let amps = match channel.amps {
            Some(s) => Some(parse_amps(
                &s.split(',').map(str::to_owned).collect::<Vec<_>>(),
            )?),
            None => file.amps.as_deref().map(parse_amps).transpose()?,
        };
        if form == FormArg::General && amps.is_none() {
            return Err(CliError::Usage("--form general needs --amps".into()));
        }

        let alpha = session.alpha.or(file.alpha);
        let beta = session.beta.or(file.beta);
        let input = match (alpha, beta) {
            (None, None) => InputChoice::Random,
            (alpha, beta) => {
                let alpha = alpha
                    .as_deref()
                    .map(parse_complex)
                    .transpose()?
                    .unwrap_or(Complex64::ZERO);
                let beta = beta
                    .as_deref()
                    .map(parse_complex)
                    .transpose()?
                    .unwrap_or(Complex64::ZERO);
                InputChoice::Explicit(alpha, beta)
            }
        };
        let default_shots = match input {
            InputChoice::Explicit(..) => 1,
            InputChoice::Random => DEFAULT_SHOTS,
        };

        let seed = match common.seed.or(file.seed) {
            Some(s) => s,
            None => match env_seed {
                Some(s) => s.trim().parse().map_err(|_| {
                    CliError::Usage(format!("{SEED_ENV}=`{s}` is not an unsigned integer"))
                })?,
                None => DEFAULT_SEED,
            },
        };

        let tol = common.tol.or(file.tol).unwrap_or(DEFAULT_TOL);
        if !(tol.is_finite() && tol > 0.0 && tol < 0.5) {
            return Err(CliError::Usage(format!(
                "--tol must lie in (0, 0.5), got {tol}"
            )));
        }

        let (grid, random_phases, csv) = match sweep {
            Some((grid, rp, csv)) => (
                grid.or(file.grid).unwrap_or(DEFAULT_GRID),
                rp || file.random_phases.unwrap_or(false),
                csv || file.csv.unwrap_or(false),
            ),
            None => (
                file.grid.unwrap_or(DEFAULT_GRID),
                file.random_phases.unwrap_or(false),
                false,
            ),
        };
        let json = common.json || file.json.unwrap_or(false);
        let output = if json {
            OutputMode::Json
        } else if csv {
            OutputMode::Csv
        } else {
            OutputMode::Text
        };

        let default_a = match form {
            FormArg::Form2 => 0.5,
            _ => 0.3,
        };
        Ok(Self {
            command,
            form,
            a: channel.a.or(file.a).unwrap_or(default_a),
            b: channel.b.or(file.b).unwrap_or(0.4),
            delta: channel.delta.or(file.delta).unwrap_or(0.0),
            lambda: channel.lambda.or(file.lambda).unwrap_or(0.0),
            gamma: channel.gamma.or(file.gamma).unwrap_or(0.0),
            amps,
            input,
            shots: session.shots.or(file.shots).unwrap_or(default_shots),
            traces: session.traces || file.traces.unwrap_or(false),
            seed,
            tol,
            output,
            dump_basis: common.dump_basis || file.dump_basis.unwrap_or(false),
            grid,
            random_phases,
        })
    }
}

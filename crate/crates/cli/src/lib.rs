//! `telecanon` command-line front end.
//!
//! [`run`] is the whole program minus process I/O, so tests can drive it
//! in-process and inspect exit code, stdout and stderr.

pub mod commands;
pub mod config;
pub mod text;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;
use thiserror::Error;

pub use config::{Cli, RunConfig};

/// Exit code contract.
pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_PERFECT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] telecanon_core::Error),
    #[error("serialization failed: {0}")]
    Serialize(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(telecanon_core::Error::NotPerfect(_)) => EXIT_NOT_PERFECT,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &CliError) -> Self {
        Self {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I, env_seed: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match RunConfig::from_cli(cli, env_seed).and_then(|cfg| commands::execute(&cfg)) {
        Ok(out) => out,
        Err(e) => Outcome::error(&e),
    }
}

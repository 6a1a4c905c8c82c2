//! Command-line front end for the coexistence model: config files, the
//! parallel campaign driver, and the CSV/JSON output formats.
//!
//! All modelling lives in `coexsim-core`; this crate only decides what to
//! run and how to write it down. Everything here is deterministic in the
//! effective config — the same file and seed produce byte-identical output
//! at any parallelism level.

pub mod cli;
pub mod config;
pub mod driver;
pub mod locations;
pub mod output;

use std::fmt;

/// Front-end failures, split by exit code: bad input (2) versus trouble
/// during execution or IO (3).
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) | CliError::Runtime(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<coexsim_core::Error> for CliError {
    fn from(e: coexsim_core::Error) -> Self {
        match e {
            coexsim_core::Error::Config(_) => CliError::Config(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

/// IO error with the path that failed, which the bare `io::Error` omits.
pub(crate) fn io_err(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::Runtime(format!("{}: {e}", path.display()))
}

//! Command-line front end for `ellbeta-core`: argument parsing, the JSON
//! and CSV output formats, and exit-code mapping.

pub mod args;
pub mod commands;
pub mod format;

use std::fmt;
use std::io;

use ellbeta_core::Error;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const DOMAIN: i32 = 2;
    pub const NO_SOLUTION: i32 = 3;
    pub const NUMERIC: i32 = 4;
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::DOMAIN,
            CliError::Io(_) => exit::NUMERIC,
            CliError::Core(e) => match e {
                Error::NoSolution { .. } => exit::NO_SOLUTION,
                Error::Quadrature { .. }
                | Error::RootNotConverged { .. }
                | Error::NoClosure { .. }
                | Error::PorismMismatch { .. } => exit::NUMERIC,
                _ => exit::DOMAIN,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Usage(s) => f.write_str(s),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

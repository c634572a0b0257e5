//! Command-line front end for `sphframe-core`: Daubechies bounds, kernel
//! profiles, partitions, frame verification and truncation reports, with
//! CSV and JSON export.

use std::fmt;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

pub mod cli;
pub mod commands;
pub mod config;

pub use cli::{Cli, Command};

/// Exit code for usage and parameter errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for a failed verification.
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verify(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Verify(_) => EXIT_VERIFY,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Verify(m) => write!(f, "verification failed: {m}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<sphframe_core::Error> for CliError {
    fn from(e: sphframe_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

/// Pretty JSON to `path`, or to `out` when no path is given.
pub fn emit_json<T: Serialize, W: Write>(value: &T, path: Option<&Path>, out: &mut W) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

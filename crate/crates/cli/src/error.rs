// SPDX-License-Identifier: MIT OR Apache-2.0

//! CLI error type and process exit codes.

use std::fmt;

pub const EXIT_OK: i32 = 0;
/// Bad flags, unknown subcommands, malformed config files.
pub const EXIT_USAGE: i32 = 1;
/// Unreadable inputs, parse failures, numeric/domain errors.
pub const EXIT_DATA: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Data(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<wbs2sdll_core::Error> for CliError {
    fn from(e: wbs2sdll_core::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

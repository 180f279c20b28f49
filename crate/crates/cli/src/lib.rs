// SPDX-License-Identifier: MIT OR Apache-2.0

//! IO companion to `wbs2sdll-core`: CSV ingestion, JSON documents, SVG fit
//! plots and the `wbs2sdll` command-line interface.

#![forbid(unsafe_code)]

pub mod cli;
pub mod csv;
pub mod error;
pub mod json;
pub mod svg;

pub use cli::run_cli;
pub use error::{CliError, EXIT_DATA, EXIT_OK, EXIT_USAGE};

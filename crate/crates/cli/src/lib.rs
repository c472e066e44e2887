//! Command-line front end for `ellinv`: configuration, subcommands and SVG
//! rendering on top of `ellinv-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod figures;
pub mod svg;

pub use commands::{execute, Output};
pub use config::{Format, JobConfig, JobFile, Operation, Overrides};
pub use error::{CliError, CliResult};

//! Library half of the `irsnoma` command-line tool: scenario files, the
//! results CSV, plotting and the subcommands themselves.

pub mod commands;
pub mod config;
pub mod error;
pub mod plot;
pub mod results;

pub use error::CliError;

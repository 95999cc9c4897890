//! Command-line front end: JSON file formats, run configuration,
//! certificates and the `tricycle` subcommands.

pub mod certificate;
pub mod commands;
pub mod config;
pub mod error;
pub mod files;

pub use commands::{run, Cli, Command, Outcome};
pub use config::RunConfig;
pub use error::CliError;

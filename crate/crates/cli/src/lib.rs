//! Command-line front end for `deltaprime`.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod record;

pub use args::Cli;
pub use commands::run;
pub use error::CliError;

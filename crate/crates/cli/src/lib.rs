//! Command-line front end: argument parsing, the four subcommands and their
//! CSV/JSON reports.

pub mod args;
pub mod commands;
pub mod report;

pub use args::Cli;
pub use commands::run;
pub use report::{CliError, Outcome, RunReport};

//! Command-line front end: fixture registry, subcommands and reports.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 when a
//! command cannot run (bad arguments, missing fixtures, malformed data).

pub mod commands;
pub mod error;
pub mod registry;
pub mod report;

use clap::Parser;

use crate::commands::Command;
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "orbkit", version, about = "Exact checks and state sums over orbkit fixtures")]
pub struct Cli {
    /// Print the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Parses a subcommand line without the program name.
pub fn parse_command(args: &[String]) -> Result<Command, CliError> {
    let argv = std::iter::once("orbkit".to_string()).chain(args.iter().cloned());
    Cli::try_parse_from(argv).map(|cli| cli.command).map_err(|e| CliError::Usage(e.to_string()))
}

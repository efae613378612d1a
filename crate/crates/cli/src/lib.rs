//! Command-line front end for `gqs-core`: argument parsing, config files,
//! output schemas and the four subcommands.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use anyhow::Result;

use args::{Cli, Command};
pub use commands::Status;
use config::{RunConfig, Settings};

/// Resolves flags and config file, then dispatches to the subcommand.
pub fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Payoff(a) => {
            let mut s = Settings::from_args(&a.common)?;
            s.set("s1", a.s1);
            s.set("s2", a.s2);
            commands::payoff(&RunConfig::resolve(&s)?)
        }
        Command::Verify(a) => commands::verify(&RunConfig::resolve(&Settings::from_args(&a)?)?),
        Command::Sweep(a) => {
            let mut s = Settings::from_args(&a.common)?;
            s.set("summary", a.summary.then_some("true"));
            s.set("diagonal", a.diagonal.then_some("true"));
            commands::sweep_cmd(&RunConfig::resolve(&s)?)
        }
        Command::Equilibria(a) => commands::equilibria(&RunConfig::resolve(&Settings::from_args(&a)?)?),
    }
}

//! Command-line driver for double Q-learning variational compiling.
//!
//! Subcommands: `compile` (one search, writes circuit.json, manifest.json,
//! replay.jsonl, qtable.json, episodes.csv), `sweep` (one search per gate
//! count, writes sweep.csv and sweep_plot.json), `oracle` (exhaustive
//! shortest structure) and `render` (wire diagram of a circuit file).

pub mod args;
pub mod commands;
pub mod error;
pub mod manifest;
pub mod oracle;
pub mod output;
pub mod render;
pub mod settings;

use std::io::Write;

pub use args::Cli;
pub use error::{CliError, CliResult};
pub use manifest::RunManifest;

/// Dispatches a parsed command line, writing human-readable output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    use args::Command;
    match &cli.command {
        Command::Compile(a) => commands::compile(a, out).map(drop),
        Command::Sweep(a) => commands::sweep(a, out).map(drop),
        Command::Oracle(a) => commands::oracle(a, out).map(drop),
        Command::Render(a) => commands::render_cmd(a, out),
    }
}

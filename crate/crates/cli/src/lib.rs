//! Command-line frontend for the triax toolkit.
//!
//! Six subcommands cover the pipeline: `simulate` writes synthetic
//! recordings, `moments` tabulates per-window distribution parameters,
//! `bootstrap` and `fatigue` produce moment-cloud reports against the
//! chi-square(3) rest reference, `cluster` groups windows into activity
//! tiers, and `spectrogram` emits short-time spectra with a tremor index.
//!
//! Conventions shared by every subcommand:
//!
//! - exit code 0 on success, 1 on input or data errors, 2 on configuration
//!   errors; diagnostics go to standard error as one-line
//!   `ERROR <code>: <detail>` messages;
//! - options resolve as built-in defaults, overridden by an optional JSON
//!   config file (`--config`), overridden by flags; the resolved set is
//!   echoed to standard error and embedded in output metadata;
//! - every output file embeds or is accompanied by a metadata block with
//!   the tool version, the resolved configuration and the SHA-256 digest
//!   of each input file, so any result can be reproduced exactly;
//! - all randomness derives from explicit seeds; rerunning a command
//!   reproduces its outputs byte for byte.

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

mod args;
mod commands;
mod common;
mod config;
mod jsonfmt;
mod meta;

pub use args::{Cli, Command};
pub use common::CliError;

/// Parse `argv`, run the selected subcommand and return the process exit
/// code. All output and diagnostics are written by the subcommands; this
/// function never panics on user errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => return report_parse_error(err),
    };
    let file = match config::load(cli.config.as_deref()) {
        Ok(file) => file,
        Err(err) => return report(&err),
    };
    let result = match cli.command {
        Command::Simulate(a) => commands::simulate::run(&a, &file.simulate),
        Command::Moments(a) => commands::moments::run(&a, &file.moments),
        Command::Bootstrap(a) => commands::bootstrap::run(&a, &file.bootstrap),
        Command::Fatigue(a) => commands::fatigue::run(&a, &file.fatigue),
        Command::Cluster(a) => commands::cluster::run(&a, &file.cluster),
        Command::Spectrogram(a) => commands::spectrogram::run(&a, &file.spectrogram),
    };
    match result {
        Ok(()) => 0,
        Err(err) => report(&err),
    }
}

fn report(err: &CliError) -> i32 {
    eprintln!("ERROR {}: {}", err.code(), err.detail());
    err.exit_code()
}

/// Help and version requests exit 0 with the rendered text on stdout;
/// everything else is a configuration error: exit 2 with a one-line
/// diagnostic. An unknown subcommand names the valid ones.
fn report_parse_error(err: clap::Error) -> i32 {
    match err.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            // tolerate a closed pipe, e.g. `triax --help | head`
            use std::io::Write as _;
            let _ = std::io::stdout().write_all(err.to_string().as_bytes());
            0
        }
        kind => {
            let mut detail = first_line(&err.to_string());
            if matches!(
                kind,
                ErrorKind::InvalidSubcommand | ErrorKind::MissingSubcommand
            ) {
                detail.push_str(
                    " (expected one of: simulate, moments, bootstrap, fatigue, cluster, \
                     spectrogram)",
                );
            }
            eprintln!("ERROR ConfigInvalid: {detail}");
            2
        }
    }
}

fn first_line(rendered: &str) -> String {
    let line = rendered.lines().next().unwrap_or("invalid arguments");
    line.strip_prefix("error: ").unwrap_or(line).to_string()
}

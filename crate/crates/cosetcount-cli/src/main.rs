//! Batch experiment harness over the cosetcount library. One experiment
//! per invocation, one table out (CSV or JSON), deterministic for a given
//! configuration.
//!
//! Exit codes: 0 when every asserted bound held, 1 on usage or
//! configuration errors, 2 when a checked bound failed (which would point
//! at an implementation bug, not at the mathematics).

use clap::error::ErrorKind;
use clap::Parser;
use std::process::ExitCode;

mod args;
mod commands;
mod emit;
mod parse;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help / --version are successes; real usage errors are 1
            // (clap's own default of 2 is reserved for bound failures).
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

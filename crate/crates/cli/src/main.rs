//! `writhe-lab`: invariant reports, reconnection runs and Monte Carlo sweeps
//! for closed polygonal curves.

mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Exit status when a reconnection changed the writhe by more than the
/// conservation tolerance.
const EXIT_NOT_CONSERVED: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Invariants(a) => commands::invariants(a),
        Command::Reconnect(a) => commands::reconnect(a).map(|conserved| {
            if !conserved {
                eprintln!("writhe not conserved within tolerance");
            }
            conserved
        }),
        Command::Pathway(a) => commands::pathway(a),
        Command::Sweep(a) => commands::sweep(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_NOT_CONSERVED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

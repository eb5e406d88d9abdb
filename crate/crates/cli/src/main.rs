//! `itsketch` command-line runner. Every command writes CSV beginning with a
//! `# schema=v1` line. Exit codes: 0 success, 1 divergence or solver
//! failure, 2 input/output errors, 64 bad flags.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("itsketch: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

mod args;
mod commands;
mod error;
mod output;
mod svg;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sample(a) => commands::sample(a),
        Command::Render(a) => commands::render(a),
        Command::Verify(a) => commands::verify(a),
        Command::Polymer(a) => commands::polymer(a),
        Command::FreeEnergy(a) => commands::free_energy(a),
        Command::Characterize(a) => commands::characterize(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("aztec: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

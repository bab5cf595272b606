use std::process::ExitCode;

use clap::Parser;
use totres_cli::{commands, Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct(a) => commands::construct(a),
        Command::Layout(a) => commands::layout(a),
        Command::Metrics(a) => commands::metrics(a),
        Command::Bench(a) => commands::bench(a),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

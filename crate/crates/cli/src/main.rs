mod args;
mod commands;
mod error;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, OutputFormat};
use commands::Outcome;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    match commands::run(&cli.command, &cli.global) {
        Ok(outcome) => {
            let body = match outcome {
                Outcome::Raw(s) => s,
                Outcome::Report(v) => match cli.global.output {
                    OutputFormat::Json => render::json(&v),
                    OutputFormat::Text => render::text(&v),
                },
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

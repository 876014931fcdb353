mod args;
mod commands;
mod error;
mod input;
mod output;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { output::INPUT_ERROR } else { 0 });
        }
    };
    let name = cli.command.name();
    let outcome = commands::run(&cli);
    ExitCode::from(output::emit(&name, &cli.global, outcome))
}

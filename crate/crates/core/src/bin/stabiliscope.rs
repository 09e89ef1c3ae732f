use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use stabiliscope::cli::{run, RunConfig, EXIT_INPUT_ERROR};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let outcome = run(&config);
    let is_error = outcome.exit_code == EXIT_INPUT_ERROR;
    let written = match (&config.output, is_error) {
        (Some(path), false) => std::fs::write(path, &outcome.output),
        (_, true) => std::io::stderr().write_all(outcome.output.as_bytes()),
        (None, false) => std::io::stdout().write_all(outcome.output.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("stabiliscope: {e}");
        return ExitCode::from(EXIT_INPUT_ERROR as u8);
    }
    ExitCode::from(outcome.exit_code as u8)
}

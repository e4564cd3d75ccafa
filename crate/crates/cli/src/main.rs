use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mixquiver_cli::error::{EXIT_CHECK_FAILED, EXIT_PASS};
use mixquiver_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|report| {
        let text = report.to_json();
        match &cli.out {
            Some(path) => std::fs::write(path, &text)
                .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?,
            None => {
                let _ = std::io::stdout().write_all(text.as_bytes());
            }
        }
        Ok(if report.all_pass() { EXIT_PASS } else { EXIT_CHECK_FAILED })
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}

//! `swidths`: command-line access to approximation numbers, complexities and
//! tractability verdicts.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 capacity exceeded,
//! 3 a checked identity (bridge or sandwich) failed.

mod args;
mod output;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Format};
use run::CliError;

const THREADS_ENV: &str = "SWIDTHS_THREADS";

fn threads(cli: &Cli) -> Result<Option<usize>, CliError> {
    if let Some(n) = cli.threads {
        return Ok(Some(n));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Input(format!("{THREADS_ENV}={v} is not a thread count"))),
        Err(_) => Ok(None),
    }
}

fn execute(cli: &Cli) -> Result<bool, CliError> {
    if let Some(n) = threads(cli)? {
        if n == 0 {
            return Err(CliError::Input("thread count must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
    }
    let outcome = run::run(cli)?;
    let mut buf = Vec::new();
    match cli.format {
        Format::Csv => outcome.report.write_csv(&mut buf)?,
        Format::Json => output::write_json(&mut buf, &outcome.report.json)?,
    }
    match &cli.output {
        Some(path) => std::fs::write(path, &buf)?,
        None => std::io::stdout().lock().write_all(&buf)?,
    }
    if let Some(note) = outcome.notice {
        eprintln!("note: {note}");
    }
    Ok(outcome.violated)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    ExitCode::SUCCESS
                }
                _ => {
                    // clap writes usage errors to standard error
                    let _ = e.print();
                    ExitCode::from(1)
                }
            };
        }
    };
    match execute(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("error: identity violated");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

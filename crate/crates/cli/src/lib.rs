//! Command-line front end: argument handling, custom root data files and
//! the JSON output schemas.

pub mod args;
pub mod commands;
pub mod datum_file;
pub mod error;
pub mod schema;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use crate::args::{Cli, Command, Common, Format};
pub use crate::error::CliError;

/// Runs one command line. On success returns the exit status (0, or 2 when
/// a reported invariant failed) after writing output to stdout or `--out`.
pub fn run<I, T>(argv: I) -> Result<i32, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            write_stdout(&e.to_string())?;
            return Ok(0);
        }
        Err(e) => {
            let msg = e.to_string();
            return Err(CliError::Usage(msg.strip_prefix("error: ").unwrap_or(&msg).trim_end().to_string()));
        }
    };
    let outcome = commands::dispatch(&cli.command)?;
    match &commands::common(&cli.command).out {
        Some(path) => std::fs::write(path, &outcome.output)
            .map_err(|e| CliError::File(format!("cannot write {}: {e}", path.display())))?,
        None => write_stdout(&outcome.output)?,
    }
    Ok(if outcome.violation { 2 } else { 0 })
}

/// A closed pipe (e.g. `| head`) is not an error.
fn write_stdout(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(CliError::File(format!("cannot write output: {e}")))
        }
        _ => Ok(()),
    }
}

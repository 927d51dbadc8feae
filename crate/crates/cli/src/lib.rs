//! Command-line front end: closed-form rate sweeps, power-split
//! optimization, critical SNR, and Monte Carlo validation, written as CSV.

pub mod commands;
pub mod error;
pub mod options;
pub mod table;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::Parser;

pub use commands::{run, Outcome};
pub use error::CliError;
pub use options::{Cli, Command, PhiChoice, RunSpec};
pub use table::Table;

/// Parses arguments, runs, writes the CSV and returns the exit code:
/// 0 on success, 1 on validation or runtime failure, 2 on usage errors.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code() as u8;
        }
    };
    match execute(&cli) {
        Ok(true) => 0,
        Ok(false) => {
            eprintln!("validation failed: see rows with pass = false");
            1
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<bool, CliError> {
    let spec = RunSpec::from_cli(cli)?;
    let outcome = run(&spec)?;
    match &spec.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            outcome.table.write_to(&mut w)?;
            w.flush()?;
        }
        None => outcome.table.write_to(io::stdout().lock())?,
    }
    Ok(outcome.ok)
}

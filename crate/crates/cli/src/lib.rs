//! Command-line front end for the `quasifourier` library.
//!
//! Every command writes a CSV table preceded by `#` lines that carry the tool
//! version and the full run configuration as JSON.

pub mod args;
pub mod commands;
pub mod output;

use std::path::Path;

use args::{Cli, Command};
use commands::Context;
use output::write_table;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] quasifourier::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("could not serialize the run configuration: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 when exact arithmetic ran out of range, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Library(quasifourier::Error::Overflow) => 2,
            _ => 1,
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let ctx = Context::new(&cli.command, &cli.common)?;
    let out = cli.common.out.as_deref();
    let table = match &cli.command {
        Command::Points { lo, hi } => commands::points(&ctx, *lo, *hi)?,
        Command::DataPoints => commands::data_points_table(&ctx),
        Command::Frequencies => commands::frequencies(&ctx),
        Command::Coeffs { estimator } => commands::coeffs(&ctx, *estimator)?,
        Command::Table1 | Command::Table3 => commands::coefficient_table(&ctx)?,
        Command::Table2 | Command::Table4 => commands::value_table(&ctx)?,
        Command::Compare { summary } => {
            let (table, errors) = commands::compare(&ctx)?;
            for row in &errors.rows {
                eprintln!("sup error of {} on [{}, {}]: {}", row[0], row[1], row[2], row[3]);
            }
            if let Some(path) = summary {
                write_table(Some(Path::new(path)), &ctx.config, &errors)?;
            }
            table
        }
        Command::Singularity => {
            let (table, notes) = commands::singularity(&ctx)?;
            for note in notes {
                eprintln!("{note}");
            }
            table
        }
        Command::ErrorBound => commands::error_bound(&ctx)?,
    };
    write_table(out, &ctx.config, &table)
}

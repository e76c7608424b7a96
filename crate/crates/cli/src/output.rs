use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::CliError;

/// A CSV table with a fixed column list.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

pub fn num(x: f64) -> String {
    format!("{x}")
}

/// Writes `#` metadata lines, then the table, to `path` or standard output.
pub fn write_table<C: Serialize>(
    path: Option<&Path>,
    config: &C,
    table: &Table,
) -> Result<(), CliError> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    write_to(sink, config, table)
}

fn write_to<C: Serialize>(mut sink: Box<dyn Write>, config: &C, table: &Table) -> Result<(), CliError> {
    writeln!(sink, "# quasifourier-cli {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(sink, "# config {}", serde_json::to_string(config)?)?;
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(&table.columns)?;
    for row in &table.rows {
        writer.write_record(row)?;
    }
    writer.flush()?;
    Ok(())
}

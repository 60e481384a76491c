use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Where a command's result goes.
pub enum Sink {
    Stdout,
    File(PathBuf),
}

impl Sink {
    pub fn resolve(output: Option<&Path>, dir: Option<&Path>, command: &str, format: Format) -> Self {
        match (output, dir) {
            (Some(p), _) => Sink::File(p.to_path_buf()),
            (None, Some(d)) => Sink::File(d.join(format!("{command}.{}", format.extension()))),
            (None, None) => Sink::Stdout,
        }
    }

    fn writer(&self) -> io::Result<Box<dyn Write>> {
        Ok(match self {
            Sink::Stdout => Box::new(io::stdout().lock()),
            Sink::File(p) => {
                if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(parent)?;
                }
                Box::new(BufWriter::new(File::create(p)?))
            }
        })
    }
}

/// A flat table: one record per row, cells as JSON scalars.
#[derive(Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Rows as objects keyed by column name.
    pub fn records(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self.columns.iter().cloned().zip(row.iter().cloned()).collect();
                Value::Object(obj)
            })
            .collect()
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Writes `table` as CSV, or `json` (falling back to the table's records) as JSON.
pub fn emit<T: Serialize>(sink: &Sink, format: Format, table: &Table, json: Option<&T>) -> io::Result<()> {
    let mut w = sink.writer()?;
    match format {
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record(&table.columns)?;
            for row in &table.rows {
                csv.write_record(row.iter().map(cell))?;
            }
            csv.flush()?;
        }
        Format::Json => {
            match json {
                Some(value) => serde_json::to_writer_pretty(&mut w, value)?,
                None => serde_json::to_writer_pretty(&mut w, &table.records())?,
            }
            writeln!(w)?;
        }
    }
    w.flush()
}

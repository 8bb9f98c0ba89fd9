//! Output tables: CSV/JSON emission at full precision plus the sidecar.
//!
//! Every number is written with 17 significant digits, enough to round-trip
//! an f64 exactly, so re-running a config reproduces the artifact
//! byte-for-byte and parsing + re-emitting a file is the identity.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::config::FormatArg;
use crate::CliError;

#[derive(Debug)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, Copy, Default, serde::Serialize)]
pub struct Diagnostics {
    pub max_norm_drift: f64,
    pub steps: u64,
    pub rows: usize,
}

impl Diagnostics {
    pub fn absorb(&mut self, other: &Diagnostics) {
        self.max_norm_drift = self.max_norm_drift.max(other.max_norm_drift);
        self.steps += other.steps;
    }
}

pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn cell(value: Option<f64>) -> String {
    value.map(fmt17).unwrap_or_default()
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("field out: cannot write {}: {e}", path.display()))
}

pub fn write_csv(path: &Path, table: &Table) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    w.write_record(&table.columns).map_err(|e| io_err(path, e))?;
    for row in &table.rows {
        w.write_record(row.iter().map(|&c| cell(c)))
            .map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

pub fn write_json(path: &Path, table: &Table) -> Result<(), CliError> {
    #[derive(serde::Serialize)]
    struct Doc<'a> {
        columns: &'a [String],
        rows: &'a [Vec<Option<f64>>],
    }
    let doc = Doc {
        columns: &table.columns,
        rows: &table.rows,
    };
    let mut out = serde_json::to_vec_pretty(&doc).expect("table serializes");
    out.push(b'\n');
    std::fs::write(path, out).map_err(|e| io_err(path, e))
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("meta.json")
}

/// Resolved config + integrator diagnostics, written next to the data file.
pub fn write_sidecar<C: serde::Serialize>(
    out: &Path,
    config: &C,
    table: &Table,
) -> Result<(), CliError> {
    #[derive(serde::Serialize)]
    struct Sidecar<'a, C> {
        config: &'a C,
        columns: &'a [String],
        diagnostics: Diagnostics,
    }
    let doc = Sidecar {
        config,
        columns: &table.columns,
        diagnostics: Diagnostics {
            rows: table.rows.len(),
            ..table.diagnostics
        },
    };
    let path = sidecar_path(out);
    let mut bytes = serde_json::to_vec_pretty(&doc).expect("sidecar serializes");
    bytes.push(b'\n');
    std::fs::write(&path, bytes).map_err(|e| io_err(&path, e))
}

/// Emit the table in the requested format and its sidecar.
pub fn write_output<C: serde::Serialize>(
    out: &Path,
    format: FormatArg,
    config: &C,
    table: &Table,
) -> Result<(), CliError> {
    match format {
        FormatArg::Csv => write_csv(out, table)?,
        FormatArg::Json => write_json(out, table)?,
    }
    write_sidecar(out, config, table)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut w = BufWriter::new(file);
    w.write_all(text.as_bytes()).map_err(|e| io_err(path, e))?;
    w.flush().map_err(|e| io_err(path, e))
}

//! CSV and JSON writers shared by the subcommands.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// CSV with a header row, `,` delimiter and LF line endings.
pub fn csv_bytes<R: Serialize>(rows: &[R]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    w.into_inner().map_err(|e| Failure::Internal(e.to_string()))
}

/// The JSON envelope every subcommand emits: schema, library version, the
/// effective configuration (defaults included), timing, then `body`.
pub fn json_bytes(
    schema: &str,
    config: Value,
    started: Instant,
    body: Value,
) -> Result<Vec<u8>, Failure> {
    let mut doc = json!({
        "schema_version": schema,
        "library_version": rhlab::VERSION,
        "config": config,
        "wall_clock_seconds": started.elapsed().as_secs_f64(),
    });
    if let (Value::Object(doc), Value::Object(body)) = (&mut doc, body) {
        doc.extend(body);
    }
    let mut bytes = serde_json::to_vec_pretty(&doc)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes to `path`, or to standard output.
pub fn write_to(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => {
            fs::write(p, bytes).map_err(|e| Failure::Internal(format!("{}: {e}", p.display())))
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Serializes `rows` in the requested format and writes them out. JSON puts
/// the rows under `"rows"`.
pub fn emit_rows<R: Serialize>(
    args: &OutputArgs,
    schema: &str,
    config: Value,
    started: Instant,
    rows: &[R],
) -> Result<(), Failure> {
    let bytes = match args.format {
        Format::Csv => csv_bytes(rows)?,
        Format::Json => json_bytes(schema, config, started, json!({ "rows": rows }))?,
    };
    write_to(args.out.as_deref(), &bytes)
}

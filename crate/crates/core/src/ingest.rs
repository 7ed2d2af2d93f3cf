//! CSV ingestion: header row, comma-separated, decimal point.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use crate::data::{Role, SampleTable};
use crate::error::{Error, Result};

fn ingest_error(file: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Ingest {
        file: file.to_string(),
        line,
        message: message.into(),
    }
}

/// Reads a CSV file into a table.
pub fn read_csv(path: &Path, role: Role) -> Result<SampleTable> {
    let label = path.display().to_string();
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|source| Error::Io {
            path: label.clone(),
            source,
        })?;
    parse_csv(&text, &label, role)
}

/// Parses CSV text; `label` names the source in error messages.
pub fn parse_csv(text: &str, label: &str, role: Role) -> Result<SampleTable> {
    if text.trim().is_empty() {
        return Err(ingest_error(label, 1, "empty file"));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let csv_error = |e: csv::Error| {
        let line = e.position().map_or(1, |p| p.line() as usize);
        ingest_error(label, line, e.to_string())
    };
    let names: Vec<String> = reader
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(str::to_string)
        .collect();
    if let Some(k) = names.iter().position(String::is_empty) {
        return Err(ingest_error(
            label,
            1,
            format!("column {} has an empty name", k + 1),
        ));
    }
    for (k, name) in names.iter().enumerate() {
        if names[..k].contains(name) {
            return Err(ingest_error(label, 1, format!("duplicate column `{name}`")));
        }
    }

    let mut columns = vec![Vec::new(); names.len()];
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        for (k, cell) in record.iter().enumerate() {
            let value: f64 = cell.parse().map_err(|_| {
                ingest_error(
                    label,
                    line,
                    format!("non-numeric cell `{cell}` in column `{}`", names[k]),
                )
            })?;
            if !value.is_finite() {
                return Err(ingest_error(
                    label,
                    line,
                    format!("non-finite cell `{cell}` in column `{}`", names[k]),
                ));
            }
            columns[k].push(value);
        }
    }
    let rows = columns[0].len();
    if rows < 2 {
        return Err(ingest_error(
            label,
            rows + 2,
            format!("need at least 2 data rows, found {rows}"),
        ));
    }
    SampleTable::new(role, names, columns)
}

/// Reads both files and checks that their row counts agree.
pub fn read_pair(factors: &Path, representation: &Path) -> Result<(SampleTable, SampleTable)> {
    let y = read_csv(factors, Role::Factors)?;
    let z = read_csv(representation, Role::Representation)?;
    if y.rows() != z.rows() {
        let (short, rows, expected) = if z.rows() < y.rows() {
            (representation, z.rows(), y.rows())
        } else {
            (factors, y.rows(), z.rows())
        };
        return Err(ingest_error(
            &short.display().to_string(),
            rows + 2,
            format!("row-count mismatch: {rows} data rows, the other file has {expected}"),
        ));
    }
    Ok((y, z))
}

//! Numeric CSV tables. Floats are written as the shortest decimal that
//! parses back to the same bits.

use std::io::{self, Read, Write};
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("row has {got} columns, header has {expected}")]
    Ragged { expected: usize, got: usize },
    #[error("cannot parse `{0}` as a number")]
    Number(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        CsvTable {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> Result<(), TableError> {
        if row.len() != self.header.len() {
            return Err(TableError::Ragged {
                expected: self.header.len(),
                got: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Bitwise comparison; any two NaN cells compare equal.
    pub fn bit_eq(&self, other: &CsvTable) -> bool {
        self.header == other.header
            && self.rows.len() == other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| {
                a.len() == b.len()
                    && a.iter()
                        .zip(b)
                        .all(|(x, y)| x.to_bits() == y.to_bits() || (x.is_nan() && y.is_nan()))
            })
    }
}

/// Shortest round-trip decimal; switches to exponent form for very large or
/// small magnitudes.
pub fn format_float(x: f64) -> String {
    format!("{x:?}")
}

pub fn write_csv_to<W: Write>(table: &CsvTable, out: W) -> Result<(), TableError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|&x| format_float(x)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv(table: &CsvTable, path: &Path) -> Result<(), TableError> {
    let file = std::fs::File::create(path)?;
    write_csv_to(table, io::BufWriter::new(file))
}

pub fn read_csv_from<R: Read>(input: R) -> Result<CsvTable, TableError> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let mut table = CsvTable::new(r.headers()?.iter());
    for rec in r.records() {
        let row = rec?
            .iter()
            .map(|cell| {
                cell.parse::<f64>()
                    .map_err(|_| TableError::Number(cell.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        table.push_row(row)?;
    }
    Ok(table)
}

pub fn read_csv(path: &Path) -> Result<CsvTable, TableError> {
    read_csv_from(std::fs::File::open(path)?)
}

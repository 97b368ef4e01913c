//! Text encodings of row lists. All indices are 1-based.
//!
//! - `rows-csv`: one row per line, ascending columns joined by `,`.
//! - `rows-json`: `{"k":…,"r":…,"rows":[[…],…]}` on a single line.
//! - `matrix-pbm`: plain PBM (`P1`), one matrix row per line, entries
//!   separated by single spaces.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::greedy::Row;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ExportFormat {
    RowsCsv,
    RowsJson,
    MatrixPbm,
    ReportJson,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rows-csv" => Ok(Self::RowsCsv),
            "rows-json" => Ok(Self::RowsJson),
            "matrix-pbm" => Ok(Self::MatrixPbm),
            "report-json" => Ok(Self::ReportJson),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

/// The `rows-json` document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowsDocument {
    pub k: usize,
    pub r: usize,
    pub rows: Vec<Vec<usize>>,
}

impl RowsDocument {
    pub fn from_rows(k: usize, r: usize, rows: &[Row]) -> Self {
        Self { k, r, rows: rows.iter().map(|row| row.points.clone()).collect() }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text)?;
        for (i, row) in doc.rows.iter().enumerate() {
            Row::new(i + 1, row.clone())?;
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string(self).expect("rows serialize");
        out.push('\n');
        out
    }
}

pub fn rows_csv<R: AsRef<[usize]>>(rows: &[R]) -> String {
    let mut out = String::new();
    for row in rows {
        let mut first = true;
        for p in row.as_ref() {
            if !first {
                out.push(',');
            }
            first = false;
            write!(out, "{p}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Plain PBM of the 0/1 matrix with `width` columns.
pub fn matrix_pbm<R: AsRef<[usize]>>(rows: &[R], width: usize) -> String {
    let mut out = format!("P1\n{width} {}\n", rows.len());
    let mut line = vec![b'0'; width];
    for row in rows {
        line.fill(b'0');
        for &p in row.as_ref() {
            if (1..=width).contains(&p) {
                line[p - 1] = b'1';
            }
        }
        let cells: Vec<&str> = line.iter().map(|&b| if b == b'1' { "1" } else { "0" }).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Largest column appearing in `rows`.
pub fn column_bound<R: AsRef<[usize]>>(rows: &[R]) -> usize {
    rows.iter().filter_map(|r| r.as_ref().last()).copied().max().unwrap_or(0)
}

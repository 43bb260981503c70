//! One line of experiment output, and its CSV and JSON encodings.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// `ratio = |value| / bound` when `bound > 0`, else `0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordRow {
    pub checkpoint: u64,
    pub label: String,
    pub count: u64,
    pub value_re: f64,
    pub value_im: f64,
    pub bound: f64,
    pub ratio: f64,
}

impl RecordRow {
    pub fn new(
        checkpoint: u64,
        label: impl Into<String>,
        count: u64,
        value: (f64, f64),
        bound: f64,
    ) -> Self {
        let abs = value.0.hypot(value.1);
        let ratio = if bound > 0.0 { abs / bound } else { 0.0 };
        RecordRow {
            checkpoint,
            label: label.into(),
            count,
            value_re: value.0,
            value_im: value.1,
            bound,
            ratio,
        }
    }

    pub fn abs(&self) -> f64 {
        self.value_re.hypot(self.value_im)
    }
}

fn csv_err(e: csv::Error) -> crate::Error {
    invalid(format!("csv: {e}"))
}

/// Header plus one line per row, decimals with 6 fractional digits.
pub fn write_csv<W: Write>(rows: &[RecordRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["checkpoint", "label", "count", "value_re", "value_im", "bound", "ratio"])
        .map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.checkpoint.to_string(),
            r.label.clone(),
            r.count.to_string(),
            format!("{:.6}", r.value_re),
            format!("{:.6}", r.value_im),
            format!("{:.6}", r.bound),
            format!("{:.6}", r.ratio),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| invalid(format!("csv: {e}")))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<RecordRow>> {
    csv::Reader::from_reader(input)
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(csv_err)
}

/// A JSON array with one object per row.
pub fn write_json<W: Write>(rows: &[RecordRow], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows).map_err(|e| invalid(format!("json: {e}")))?;
    writeln!(out).map_err(|e| invalid(format!("json: {e}")))
}

pub fn read_json<R: Read>(input: R) -> Result<Vec<RecordRow>> {
    serde_json::from_reader(input).map_err(|e| invalid(format!("json: {e}")))
}

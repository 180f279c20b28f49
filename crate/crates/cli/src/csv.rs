// SPDX-License-Identifier: MIT OR Apache-2.0

//! CSV ingestion and emission for time series.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use wbs2sdll_core::TimeSeries;

use crate::error::CliError;

/// Read a series: one numeric value per line, or `t,value` rows, with an
/// optional single header line (detected by a non-numeric first row).
pub fn read_csv(path: &Path) -> Result<TimeSeries, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    parse_csv(&text).map_err(|msg| CliError::Data(format!("{}: {msg}", path.display())))
}

/// Parse CSV text into a series. Blank lines are skipped.
pub fn parse_csv(text: &str) -> Result<TimeSeries, String> {
    let mut values = Vec::new();
    let mut header_allowed = true;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        match parse_row(line) {
            Ok(v) => {
                values.push(v);
                header_allowed = false;
            }
            Err(msg) => {
                if header_allowed {
                    header_allowed = false;
                    continue;
                }
                return Err(format!("parse error at line {}: {msg}", idx + 1));
            }
        }
    }
    if values.is_empty() {
        return Err("no data rows".into());
    }
    TimeSeries::new(values).map_err(|e| e.to_string())
}

fn parse_row(line: &str) -> Result<f64, String> {
    let fields: Vec<&str> = line.split(',').map(str::trim).collect();
    match fields.as_slice() {
        [value] => parse_field(value),
        [t, value] => {
            parse_field(t)?;
            parse_field(value)
        }
        _ => Err(format!("expected 1 or 2 columns, found {}", fields.len())),
    }
}

fn parse_field(field: &str) -> Result<f64, String> {
    let v: f64 = field
        .parse()
        .map_err(|_| format!("not a number: {field:?}"))?;
    if !v.is_finite() {
        return Err(format!("non-finite value: {field:?}"));
    }
    Ok(v)
}

/// One value per line, shortest round-trip formatting.
pub fn format_csv(x: &TimeSeries) -> String {
    let mut out = String::new();
    for v in x.values() {
        let _ = writeln!(out, "{v}");
    }
    out
}

pub fn write_csv(x: &TimeSeries, path: &Path) -> Result<(), CliError> {
    fs::write(path, format_csv(x))
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
}

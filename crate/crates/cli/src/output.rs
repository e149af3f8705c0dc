// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Tables and their CSV/JSON encodings. Floats are written with nine
//! significant digits in both encodings.

use std::io::Write;

use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::CliResult;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(u64::from(v))
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Command output: rows under fixed columns, plus optional JSON-only
/// summary fields.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Map<String, Value>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            ..Table::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, format: Format, w: W) -> CliResult<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }

    fn write_csv<W: Write>(&self, w: W) -> CliResult<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.columns)?;
        for row in &self.rows {
            out.write_record(row.iter().map(format_cell))?;
        }
        out.flush().map_err(|e| crate::error::CliError::io("writing CSV", e))?;
        Ok(())
    }

    fn write_json<W: Write>(&self, mut w: W) -> CliResult<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| (c.to_string(), cell_json(v)))
                        .collect(),
                )
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("rows".into(), Value::Array(rows));
        for (k, v) in &self.summary {
            doc.insert(k.clone(), round_json(v.clone()));
        }
        serde_json::to_writer_pretty(&mut w, &Value::Object(doc))
            .map_err(|e| crate::error::CliError::io("writing JSON", e.into()))?;
        writeln!(w).map_err(|e| crate::error::CliError::io("writing JSON", e))?;
        Ok(())
    }
}

/// `x` with nine significant digits, without trailing zeros.
pub fn sig9(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    // scientific form rounds first, so its exponent already includes any carry
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn format_cell(c: &Cell) -> String {
    match c {
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) => sig9(*v),
        Cell::Text(t) => t.clone(),
    }
}

fn round9(x: f64) -> f64 {
    sig9(x).parse().unwrap_or(x)
}

fn cell_json(c: &Cell) -> Value {
    match c {
        Cell::Int(v) => Value::from(*v),
        Cell::Float(v) => serde_json::Number::from_f64(round9(*v)).map_or(Value::Null, Value::Number),
        Cell::Text(t) => Value::String(t.clone()),
    }
}

/// Rounds every float in a JSON value to nine significant digits.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round9(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

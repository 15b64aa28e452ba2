// SPDX-License-Identifier: Apache-2.0

//! Tabular output. CSV writes logs with six decimals and leaves undefined
//! fields blank; JSON writes an array of objects keyed by column with
//! `null` for undefined fields.

use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    pub fn int(v: impl Into<i128>) -> Cell {
        Cell::Int(v.into())
    }

    pub fn opt_int(v: Option<impl Into<i128>>) -> Cell {
        v.map_or(Cell::Empty, Cell::int)
    }

    pub fn opt_float(v: Option<f64>) -> Cell {
        v.map_or(Cell::Empty, Cell::Float)
    }

    pub fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.6}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            // values past 64 bits go out as decimal strings
            Cell::Int(v) if v.unsigned_abs() <= u64::MAX as u128 => {
                if *v < 0 {
                    Value::from(*v as i64)
                } else {
                    Value::from(*v as u64)
                }
            }
            Cell::Int(v) => Value::String(v.to_string()),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Bool(v) => Value::Bool(*v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Cell {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn csv_records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(Cell::to_csv).collect())
            .collect()
    }

    pub fn json_value(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .cloned()
                        .zip(r.iter().map(Cell::to_json))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> Result<()> {
        match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut out);
                w.write_record(&self.columns)?;
                for rec in self.csv_records() {
                    w.write_record(&rec)?;
                }
                w.flush()?;
            }
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.json_value())?;
                out.write_all(b"\n")?;
            }
        }
        out.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_render_per_format() {
        assert_eq!(Cell::Float(3.66519).to_csv(), "3.665190");
        assert_eq!(Cell::Empty.to_csv(), "");
        assert_eq!(Cell::Empty.to_json(), Value::Null);
        assert_eq!(Cell::int(-2).to_json(), Value::from(-2));
        assert_eq!(Cell::Int(1 << 70).to_json(), Value::String((1i128 << 70).to_string()));
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["n", "ones", "log_complexity"]);
        t.push(vec![Cell::int(1), Cell::int(1), Cell::Empty]);
        t.push(vec![Cell::int(23), Cell::int(10), Cell::Float(10.0 / 23f64.log(3.0))]);
        let mut buf = Vec::new();
        t.write(Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,ones,log_complexity\n1,1,\n23,10,3.503793\n");
    }
}

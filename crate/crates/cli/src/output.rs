//! Tables and records, emitted as CSV / `key=value` text or JSON.
//!
//! Every real number is written with 17 significant digits in scientific
//! notation, which round-trips exactly through `f64::from_str`.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{Map, Number, Value};

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Num(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => num(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Num(x) => Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as u64)
    }
}

impl From<u64> for Cell {
    fn from(i: u64) -> Self {
        Cell::Int(i)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// Rows under a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    /// An array of objects keyed by the header.
    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.header
                        .iter()
                        .zip(row)
                        .map(|(k, c)| (k.to_string(), c.json()))
                        .collect(),
                )
            })
            .collect();
        format!("{:#}\n", Value::Array(rows))
    }

    pub fn render(&self, json: bool) -> Result<String> {
        if json {
            Ok(self.to_json())
        } else {
            self.to_csv()
        }
    }
}

/// Named scalar results of one computation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(Vec<(&'static str, Cell)>);

impl Record {
    pub fn with(mut self, key: &'static str, value: impl Into<Cell>) -> Self {
        self.0.push((key, value.into()));
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let map: Map<String, Value> = self.0.iter().map(|(k, c)| (k.to_string(), c.json())).collect();
            format!("{:#}\n", Value::Object(map))
        } else {
            self.0.iter().map(|(k, c)| format!("{k}={}\n", c.text())).collect()
        }
    }
}

/// Writes to `path`, or stdout when there is none.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).context("writing to stdout")?;
            out.flush().context("writing to stdout")
        }
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Tabular report documents rendered as aligned text, CSV or JSON.
//!
//! Rational cells are shown rounded half-up at the configured precision.
//! CSV adds an `<column>_exact` column holding `num/den` next to every
//! rational column, and JSON carries `num` and `den` fields, so no exact
//! value is lost outside the text format.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::share::Share;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown output format {other:?} (expected text, csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Text(String),
    Int(i128),
    /// Rendered as a percentage.
    Percent(Share),
    /// Rendered as a plain decimal.
    Decimal(Share),
    /// A value that does not exist, with the reason shown in its place.
    Missing(String),
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    pub fn int(v: impl Into<i128>) -> Cell {
        Cell::Int(v.into())
    }

    fn rendered(&self, precision: usize) -> String {
        match self {
            Cell::Text(s) | Cell::Missing(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Percent(s) => s.render_percent(precision),
            Cell::Decimal(s) => s.render_decimal(precision),
        }
    }

    fn exact(&self) -> Option<&Share> {
        match self {
            Cell::Percent(s) | Cell::Decimal(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Rendered cell text, for lookups in tests and callers.
    pub fn rendered(&self, row: usize, column: &str, precision: usize) -> Option<String> {
        let k = self.columns.iter().position(|c| c == column)?;
        Some(self.rows.get(row)?.get(k)?.rendered(precision))
    }

    fn rational_columns(&self) -> Vec<bool> {
        (0..self.columns.len())
            .map(|k| self.rows.iter().any(|r| r[k].exact().is_some()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub tables: Vec<Table>,
    /// Free-form trailing lines, e.g. a verdict.
    pub notes: Vec<String>,
}

impl Document {
    pub fn new(tables: Vec<Table>) -> Self {
        Document {
            tables,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn table(&self, title: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.title == title)
    }

    pub fn render(&self, format: OutputFormat, precision: usize) -> String {
        match format {
            OutputFormat::Text => self.render_text(precision),
            OutputFormat::Csv => self.render_csv(precision),
            OutputFormat::Json => self.render_json(precision),
        }
    }

    fn render_text(&self, precision: usize) -> String {
        let mut out = String::new();
        for (i, table) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "{}", table.title);
            let cells: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| r.iter().map(|c| c.rendered(precision)).collect())
                .collect();
            let widths: Vec<usize> = table
                .columns
                .iter()
                .enumerate()
                .map(|(k, h)| cells.iter().map(|r| r[k].len()).chain([h.len()]).max().unwrap_or(0))
                .collect();
            let line = |fields: &[String]| {
                let mut s = String::new();
                for (k, f) in fields.iter().enumerate() {
                    if k == 0 {
                        let _ = write!(s, "{f:<w$}", w = widths[k]);
                    } else {
                        let _ = write!(s, "  {f:>w$}", w = widths[k]);
                    }
                }
                s.trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(&table.columns));
            for r in &cells {
                let _ = writeln!(out, "{}", line(r));
            }
        }
        for note in &self.notes {
            if !out.is_empty() {
                out.push('\n');
            }
            let _ = writeln!(out, "{note}");
        }
        out
    }

    fn render_csv(&self, precision: usize) -> String {
        let mut out = String::new();
        for (i, table) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "# {}", table.title);
            let exact = table.rational_columns();
            let mut header = Vec::new();
            for (name, &has_exact) in table.columns.iter().zip(&exact) {
                header.push(csv_field(name));
                if has_exact {
                    header.push(csv_field(&format!("{name}_exact")));
                }
            }
            let _ = writeln!(out, "{}", header.join(","));
            for row in &table.rows {
                let mut fields = Vec::new();
                for (cell, &has_exact) in row.iter().zip(&exact) {
                    fields.push(csv_field(&cell.rendered(precision)));
                    if has_exact {
                        fields.push(cell.exact().map(|s| format!("{}/{}", s.numer(), s.denom())).unwrap_or_default());
                    }
                }
                let _ = writeln!(out, "{}", fields.join(","));
            }
        }
        for note in &self.notes {
            let _ = writeln!(out, "# {note}");
        }
        out
    }

    fn render_json(&self, precision: usize) -> String {
        let tables: Vec<Value> = self
            .tables
            .iter()
            .map(|table| {
                let rows: Vec<Value> = table
                    .rows
                    .iter()
                    .map(|row| {
                        let mut obj = Map::new();
                        for (name, cell) in table.columns.iter().zip(row) {
                            obj.insert(name.clone(), json_cell(cell, precision));
                        }
                        Value::Object(obj)
                    })
                    .collect();
                json!({ "title": table.title, "columns": table.columns, "rows": rows })
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&json!({ "tables": tables, "notes": self.notes })).expect("json");
        s.push('\n');
        s
    }
}

fn json_cell(cell: &Cell, precision: usize) -> Value {
    match cell {
        Cell::Text(s) => Value::String(s.clone()),
        Cell::Int(v) => match i64::try_from(*v) {
            Ok(v) => Value::from(v),
            Err(_) => Value::String(v.to_string()),
        },
        Cell::Percent(s) | Cell::Decimal(s) => json!({
            "value": cell.rendered(precision),
            "num": s.numer().to_string(),
            "den": s.denom().to_string(),
        }),
        Cell::Missing(reason) => json!({ "value": Value::Null, "reason": reason }),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

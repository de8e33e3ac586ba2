//! Deterministic CSV and JSON output.

use std::io::Write;
use std::path::Path;

use crate::config::Format;
use crate::run::Table;
use crate::SweepError;

/// Nine significant digits in exponent form; `-0` prints as `0`.
pub fn format_number(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.8e}")
}

fn cells(table: &Table) -> Vec<Vec<Cell>> {
    table
        .rows
        .iter()
        .map(|r| {
            let mut c = vec![
                Cell::Num(r.e_q),
                Cell::Num(r.e_ja),
                Cell::Num(r.e_jb),
                Cell::Text(r.status.clone()),
            ];
            c.extend(r.values.iter().map(|v| v.map_or(Cell::Empty, Cell::Num)));
            if table.guarded {
                c.push(r.within_guard.map_or(Cell::Empty, Cell::Bool));
            }
            c
        })
        .collect()
}

enum Cell {
    Num(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => format_number(*v),
            Cell::Num(_) | Cell::Empty => String::new(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => format_number(*v),
            Cell::Num(_) | Cell::Empty => "null".into(),
            Cell::Text(s) => serde_json::to_string(s).expect("string serializes"),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

pub fn to_csv(table: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(table.columns()).expect("in-memory write");
    for row in cells(table) {
        w.write_record(row.iter().map(Cell::csv)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// JSON array of row objects with keys in column order.
pub fn to_json(table: &Table) -> String {
    let cols = table.columns();
    let rows: Vec<String> = cells(table)
        .iter()
        .map(|row| {
            let fields: Vec<String> = cols
                .iter()
                .zip(row)
                .map(|(k, c)| format!("\"{k}\": {}", c.json()))
                .collect();
            format!("  {{{}}}", fields.join(", "))
        })
        .collect();
    if rows.is_empty() {
        "[]\n".into()
    } else {
        format!("[\n{}\n]\n", rows.join(",\n"))
    }
}

pub fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => to_csv(table),
        Format::Json => to_json(table),
    }
}

/// Writes the table to `path`, or to stdout when `path` is `None`.
pub fn emit(table: &Table, format: Format, path: Option<&Path>) -> Result<(), SweepError> {
    let text = render(table, format);
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| SweepError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| SweepError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

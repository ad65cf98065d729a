//! Tables written as CSV (with a `#` metadata block) or JSON.

use crate::error::CliError;
use serde_json::{Map, Value};
use std::io::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

/// Fixed 17-significant-digit scientific notation; round-trips every f64.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Num(x) => fmt_f64(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x)
                .map(Value::Number)
                .unwrap_or_else(|| Value::String(fmt_f64(*x))),
            Cell::Int(n) => Value::from(*n),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.meta.push((key.into(), value.into()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn io(e: impl std::fmt::Display) -> CliError {
    CliError::Io(e.to_string())
}

pub fn write_csv(table: &Table, mut out: impl Write) -> Result<(), CliError> {
    for (k, v) in &table.meta {
        writeln!(out, "# {k} = {v}").map_err(io)?;
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(&table.columns).map_err(io)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::text)).map_err(io)?;
    }
    w.flush().map_err(io)
}

pub fn write_json(table: &Table, mut out: impl Write) -> Result<(), CliError> {
    let meta: Map<String, Value> = table
        .meta
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    let records: Vec<Value> = table
        .rows
        .iter()
        .map(|row| Value::Object(table.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect()))
        .collect();
    let mut doc = Map::new();
    doc.insert("meta".into(), Value::Object(meta));
    doc.insert("records".into(), Value::Array(records));
    serde_json::to_writer_pretty(&mut out, &Value::Object(doc)).map_err(io)?;
    out.write_all(b"\n").map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [std::f64::consts::E, 0.1, -1.0 / 3.0, 1e-300, 5e-324, f64::MAX, 0.0] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(fmt_f64(std::f64::consts::E), "2.7182818284590451e0");
        assert_eq!(fmt_f64(f64::NAN), "NaN");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["t", "N", "status"]);
        t.meta("command", "solve");
        t.push(vec![Cell::Num(0.5), Cell::Num(-2.0), Cell::Text("converged".into())]);
        t.push(vec![Cell::Num(1.0), Cell::Num(1.0), Cell::Text("a,b".into())]);
        let mut buf = Vec::new();
        write_csv(&t, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "# command = solve\nt,N,status\n5.0000000000000000e-1,-2.0000000000000000e0,converged\n\
             1.0000000000000000e0,1.0000000000000000e0,\"a,b\"\n"
        );
    }

    #[test]
    fn json_layout() {
        let mut t = Table::new(&["value", "terms_used"]);
        t.meta("function", "ml");
        t.push(vec![Cell::Num(f64::NAN), Cell::Int(3)]);
        let mut buf = Vec::new();
        write_json(&t, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["meta"]["function"], "ml");
        assert_eq!(v["records"][0]["value"], "NaN");
        assert_eq!(v["records"][0]["terms_used"], 3);
    }
}

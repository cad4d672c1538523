//! Tables written as CSV (with a `#` preamble) or as one JSON object.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use micz_core::HalfInt;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Half(HalfInt),
    Num(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // Debug is the shortest representation that parses back exactly
            Cell::Num(x) => format!("{x:?}"),
            Cell::Half(h) => format!("{:?}", h.to_f64()),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Half(h) => json!(h.to_f64()),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<HalfInt> for Cell {
    fn from(h: HalfInt) -> Self {
        Cell::Half(h)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Derived quantities of the run (e.g. the notation block of a state).
    pub notation: Option<Value>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
            notation: None,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, config: &Value, format: Format, out: impl Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(config, out),
            Format::Json => self.write_json(config, out),
        }
    }

    fn write_csv(&self, config: &Value, mut out: impl Write) -> io::Result<()> {
        writeln!(out, "# micz {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(out, "# config {config}")?;
        if let Some(n) = &self.notation {
            writeln!(out, "# notation {n}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()
    }

    fn write_json(&self, config: &Value, mut out: impl Write) -> io::Result<()> {
        let rows: Vec<Vec<Value>> = self.rows.iter().map(|r| r.iter().map(Cell::json).collect()).collect();
        let doc = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "config": config,
            "notation": self.notation,
            "columns": self.columns,
            "rows": rows,
        });
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out)
    }
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn emit(table: &Table, config: &Value, format: Format, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p)?);
            table.write(config, format, &mut f)?;
            f.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            table.write(config, format, &mut lock)?;
            lock.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, std::f64::consts::PI] {
            let s = Cell::Num(x).csv();
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(Cell::Half(HalfInt::from_twice(-3)).csv(), "-1.5");
        assert_eq!(Cell::Empty.csv(), "");
    }

    #[test]
    fn csv_has_preamble_and_header() {
        let mut t = Table::new(vec!["a", "b"]);
        t.push(vec![Cell::Num(0.5), Cell::Text("x,y".into())]);
        let mut buf = Vec::new();
        t.write(&json!({"k": 1}), Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# micz "));
        assert_eq!(lines[1], r#"# config {"k":1}"#);
        assert_eq!(lines[2], "a,b");
        assert_eq!(lines[3], r#"0.5,"x,y""#);
    }

    #[test]
    fn json_document_shape() {
        let mut t = Table::new(vec!["a"]);
        t.push(vec![Cell::Num(f64::NAN)]);
        let mut buf = Vec::new();
        t.write(&json!({}), Format::Json, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["columns"], json!(["a"]));
        assert_eq!(v["rows"], json!([[null]]));
    }
}

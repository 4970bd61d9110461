//! Tabular output rendered as CSV or JSON.

use serde_json::{json, Value};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// Output encoding selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Exact text such as `p/q`, a label or a phase.
    Text(String),
    /// A complex double, written `re,im` in CSV and `[re, im]` in JSON.
    Complex(f64, f64),
}

impl From<String> for Cell {
    fn from(s: String) -> Cell {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Cell {
        Cell::Text(s.to_string())
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Cell {
        Cell::Text(n.to_string())
    }
}

fn clean(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

impl Cell {
    /// A complex cell from a `num_complex`-style pair.
    pub fn complex(re: f64, im: f64) -> Cell {
        Cell::Complex(clean(re), clean(im))
    }

    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Complex(re, im) => format!("{re:?},{im:?}"),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => json!(s),
            Cell::Complex(re, im) => json!([re, im]),
        }
    }
}

/// A named table with a header row.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Table {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// CSV text with a header line.
    pub fn to_csv(&self) -> io::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        String::from_utf8(bytes).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
    }

    /// `{"columns": [...], "rows": [[...]]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "columns": self.columns,
            "rows": self
                .rows
                .iter()
                .map(|r| r.iter().map(Cell::json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Writes named outputs into a directory.
pub struct Sink {
    dir: PathBuf,
    format: Format,
    written: Vec<PathBuf>,
}

impl Sink {
    pub fn new(dir: &Path, format: Format) -> io::Result<Sink> {
        fs::create_dir_all(dir)?;
        Ok(Sink {
            dir: dir.to_path_buf(),
            format,
            written: Vec::new(),
        })
    }

    /// Writes `name.csv` or `name.json`.
    pub fn table(&mut self, name: &str, t: &Table) -> io::Result<()> {
        let body = match self.format {
            Format::Csv => t.to_csv()?,
            Format::Json => pretty(&t.to_json()),
        };
        self.raw(&format!("{name}.{}", self.format.extension()), &body)
    }

    /// Writes `name.json` regardless of the table format.
    pub fn json(&mut self, name: &str, v: &Value) -> io::Result<()> {
        self.raw(&format!("{name}.json"), &pretty(v))
    }

    fn raw(&mut self, file: &str, body: &str) -> io::Result<()> {
        let path = self.dir.join(file);
        fs::write(&path, body)?;
        self.written.push(path);
        Ok(())
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}

/// Pretty JSON with a trailing newline.
pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_cells_are_quoted_in_csv() {
        let mut t = Table::new(["a", "b"]);
        t.push(vec!["1/2".into(), Cell::complex(0.5, -0.0)]);
        assert_eq!(t.to_csv().unwrap(), "a,b\n1/2,\"0.5,0.0\"\n");
    }

    #[test]
    fn json_mirrors_csv() {
        let mut t = Table::new(["x"]);
        t.push(vec![Cell::complex(1.0, 2.0)]);
        assert_eq!(t.to_json(), json!({"columns": ["x"], "rows": [[[1.0, 2.0]]]}));
    }
}

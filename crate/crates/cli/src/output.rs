//! Result tables, the JSON envelope and the single writer.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};
use crate::error::CliError;

/// Environment variable naming the default output directory.
pub const OUT_DIR_VAR: &str = "SUSYQM_OUT_DIR";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// 17 significant digits, `.` decimal point.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.16e}")
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(v) => format_float(*v),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Num(v) if v.is_finite() => json!(v),
            Cell::Num(v) => json!(format_float(*v)),
            Cell::Text(s) => json!(s),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[j]).collect())
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::csv))?;
        }
        w.into_inner().map_err(|e| e.into_error().into())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "columns": self.columns,
            "rows": self.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), CliError> {
        let bytes = self.to_csv().map_err(|e| CliError::io(path, e.into()))?;
        std::fs::write(path, bytes).map_err(|e| CliError::io(path, e))
    }
}

/// What a subcommand produced.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub table: Table,
    pub diagnostics: Map<String, Value>,
    /// Plain-text report printed in CSV mode instead of the table.
    pub report: Option<String>,
    pub failed: bool,
}

impl Outcome {
    pub fn new(table: Table) -> Self {
        Self {
            table,
            ..Self::default()
        }
    }

    pub fn diag(&mut self, key: &str, value: impl Into<Value>) {
        self.diagnostics.insert(key.into(), value.into());
    }
}

pub fn envelope(cfg: &RunConfig, outcome: &Outcome) -> Value {
    json!({
        "inputs": cfg,
        "version": susyqm::VERSION,
        "operation": cfg.subcommand.name(),
        "outputs": outcome.table.to_json(),
        "diagnostics": outcome.diagnostics,
        "passed": !outcome.failed,
    })
}

/// `output.path`, else `$SUSYQM_OUT_DIR/<subcommand>.<ext>`, else stdout.
pub fn destination(cfg: &RunConfig) -> Option<PathBuf> {
    if cfg.subcommand == crate::config::Command::Figures {
        return None;
    }
    if let Some(p) = cfg.output.as_ref().and_then(|o| o.path.clone()) {
        return Some(p);
    }
    let dir = std::env::var_os(OUT_DIR_VAR)?;
    let ext = match cfg.format() {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    Some(Path::new(&dir).join(format!("{}.{ext}", cfg.subcommand.name())))
}

pub fn emit(cfg: &RunConfig, outcome: &Outcome) -> Result<(), CliError> {
    let bytes = match (cfg.format(), &outcome.report) {
        (Format::Csv, Some(r)) => r.clone().into_bytes(),
        (Format::Csv, None) => outcome
            .table
            .to_csv()
            .map_err(|e| CliError::io(Path::new("<csv>"), e.into()))?,
        (Format::Json, _) => {
            let mut s = serde_json::to_string_pretty(&envelope(cfg, outcome)).expect("envelope serializes");
            s.push('\n');
            s.into_bytes()
        }
    };
    match destination(cfg) {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            }
            std::fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))
        }
        None => match std::io::stdout().lock().write_all(&bytes) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::io(Path::new("<stdout>"), e)),
            _ => Ok(()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_17_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(3.0), "3.0000000000000000e0");
        assert_eq!(format_float(f64::INFINITY), "inf");
        let v = 2.0f64.sqrt();
        assert_eq!(format_float(v).parse::<f64>().unwrap(), v);
    }

    proptest::proptest! {
        #[test]
        fn float_text_round_trips(v in proptest::num::f64::ANY) {
            let back: f64 = format_float(v).parse().unwrap();
            proptest::prop_assert!(back == v || (back.is_nan() && v.is_nan()));
        }
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(["n", "energy"]);
        t.push(vec![0usize.into(), 0.0.into()]);
        t.push(vec![1usize.into(), 3.0.into()]);
        let s = String::from_utf8(t.to_csv().unwrap()).unwrap();
        assert_eq!(s, "n,energy\n0,0.0000000000000000e0\n1,3.0000000000000000e0\n");
    }
}

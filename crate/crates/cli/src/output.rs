//! CSV tables with a provenance header, and the JSON manifest beside them.

use std::fs;
use std::path::{Path, PathBuf};

use hybrid_lgt::solvers::RunRecord;
use serde_json::{Map, Value};

use crate::config::Settings;
use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Real(f64),
    Maybe(Option<f64>),
    Count(usize),
    Text(String),
    Flag(bool),
}

impl Cell {
    /// Reals at 17 significant digits; missing values as empty fields.
    pub fn csv(&self) -> String {
        match self {
            Cell::Real(x) | Cell::Maybe(Some(x)) => format!("{x:.16e}"),
            Cell::Maybe(None) => String::new(),
            Cell::Count(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Real(x) | Cell::Maybe(Some(x)) => serde_json::json!(x),
            Cell::Maybe(None) => Value::Null,
            Cell::Count(n) => serde_json::json!(n),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Flag(b) => Value::Bool(*b),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&'static str]) -> Self {
        Self { name: name.to_owned(), columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Object(self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.json())).collect()))
                .collect(),
        )
    }
}

/// Everything one command writes.
pub struct Outputs {
    pub tables: Vec<Table>,
    pub cutoffs: Map<String, Value>,
    /// Extra text files, relative to the output directory.
    pub attachments: Vec<(PathBuf, String)>,
}

fn write_table(dir: &Path, command: &str, hash: &str, cutoffs: &str, table: &Table) -> Result<PathBuf, CliError> {
    let path = dir.join(format!("{}.csv", table.name));
    let mut text = format!("# command={command}\n# config_hash={hash}\n# cutoffs={cutoffs}\n");
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::csv))?;
    }
    let body = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    text.push_str(&String::from_utf8(body).map_err(|e| CliError::Io(e.to_string()))?);
    fs::write(&path, text)?;
    Ok(path)
}

/// Writes every table, attachment and `<command>.json`; returns the written paths.
pub fn write_outputs(command: &str, settings: &Settings, outputs: &Outputs) -> Result<Vec<PathBuf>, CliError> {
    let dir = settings.out_dir();
    fs::create_dir_all(&dir)?;
    let hash = settings.hash();
    let cutoff_text =
        outputs.cutoffs.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(";");
    let mut written = Vec::new();
    for t in &outputs.tables {
        written.push(write_table(&dir, command, &hash, &cutoff_text, t)?);
    }
    for (rel, text) in &outputs.attachments {
        let path = dir.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(&path, text)?;
        written.push(path);
    }
    let results = Value::Object(outputs.tables.iter().map(|t| (t.name.clone(), t.json())).collect());
    let record =
        RunRecord::new(command, &hash, settings.resolved_json(), Value::Object(outputs.cutoffs.clone()), results);
    let manifest = dir.join(format!("{command}.json"));
    fs::write(&manifest, record.to_json() + "\n")?;
    written.push(manifest);
    Ok(written)
}

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::CliError;

pub const TOOL: &str = "metascreen-cli";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Bumped whenever the JSON layout changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Fixed-column table; numbers are written with full round-trip precision.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn to_csv(&self, out: &mut String) {
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(v) if v.is_nan() => String::new(),
                    Cell::Num(v) => format!("{v:e}"),
                    Cell::Text(t) if t.contains([',', '"', '\n']) => {
                        format!("\"{}\"", t.replace('"', "\"\""))
                    }
                    Cell::Text(t) => t.clone(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
    }

    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(k, c)| {
                        let v = match c {
                            Cell::Num(v) if v.is_finite() => json!(v),
                            Cell::Num(_) => Value::Null,
                            Cell::Text(t) => json!(t),
                        };
                        (k.to_string(), v)
                    })
                    .collect::<serde_json::Map<_, _>>();
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }
}

/// Result of one subcommand: a JSON summary and optionally a table.
pub struct Artifact {
    pub name: &'static str,
    pub summary: Option<Value>,
    pub table: Option<Table>,
}

fn header(cfg: &RunConfig, command: &str) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "schema": SCHEMA_VERSION,
        "command": command,
        "config": cfg,
    })
}

/// Renders an artifact; CSV output carries the provenance header as `#` comment lines.
pub fn render(
    cfg: &RunConfig,
    art: &Artifact,
    format: Format,
) -> Result<Vec<(String, String)>, CliError> {
    let mut files = Vec::new();
    match format {
        Format::Json => {
            let mut doc = header(cfg, art.name);
            if let Some(s) = &art.summary {
                doc["result"] = s.clone();
            }
            if let Some(t) = &art.table {
                doc["table"] = t.to_json();
            }
            let text =
                serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))? + "\n";
            files.push((format!("{}.json", art.name), text));
        }
        Format::Csv => {
            let mut text = String::new();
            let _ = writeln!(text, "# {TOOL} {VERSION} {}", art.name);
            let _ = writeln!(
                text,
                "# config: {}",
                serde_json::to_string(&cfg).map_err(|e| CliError::Io(e.to_string()))?
            );
            match (&art.table, &art.summary) {
                (Some(t), summary) => {
                    if let Some(s) = summary {
                        let _ = writeln!(
                            text,
                            "# result: {}",
                            serde_json::to_string(s).map_err(|e| CliError::Io(e.to_string()))?
                        );
                    }
                    t.to_csv(&mut text);
                }
                (None, Some(s)) => key_value_csv(s, &mut text),
                (None, None) => {}
            }
            files.push((format!("{}.csv", art.name), text));
        }
    }
    Ok(files)
}

fn key_value_csv(v: &Value, out: &mut String) {
    out.push_str("key,value\n");
    if let Value::Object(map) = v {
        for (k, v) in map {
            match v {
                Value::Array(_) | Value::Object(_) => {}
                Value::Null => {
                    let _ = writeln!(out, "{k},");
                }
                other => {
                    let _ = writeln!(out, "{k},{other}");
                }
            }
        }
    }
}

/// Writes rendered files into `dir`, or prints them to stdout.
pub fn emit(files: &[(String, String)], dir: Option<&Path>) -> Result<Vec<PathBuf>, CliError> {
    let mut written = Vec::new();
    match dir {
        None => {
            for (_, text) in files {
                print!("{text}");
            }
        }
        Some(d) => {
            std::fs::create_dir_all(d)
                .map_err(|e| CliError::Io(format!("{}: {e}", d.display())))?;
            for (name, text) in files {
                let path = d.join(name);
                std::fs::write(&path, text)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                written.push(path);
            }
        }
    }
    Ok(written)
}

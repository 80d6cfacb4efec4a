//! CSV and JSON writers. Every JSON document carries the tool name, version,
//! subcommand, seed and the configuration that produced it.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::format::{fmt_g, round_floats};

pub const TOOL: &str = "klab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// What produced an output file.
#[derive(Debug, Clone)]
pub struct Provenance {
    pub command: String,
    pub config: Value,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(command: &str, config: &impl Serialize, seed: Option<u64>) -> Self {
        let config = serde_json::to_value(config).expect("config serializes");
        Self { command: command.to_string(), config, seed }
    }

    /// The full JSON document around `result`.
    pub fn document(&self, result: &impl Serialize) -> serde_json::Result<Value> {
        let mut doc = json!({
            "tool": TOOL,
            "version": VERSION,
            "command": self.command,
            "seed": self.seed,
            "config": self.config,
            "result": serde_json::to_value(result)?,
        });
        round_floats(&mut doc);
        Ok(doc)
    }
}

/// A CSV cell.
pub enum Cell {
    Int(i128),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => fmt_g(*x),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

macro_rules! cell_from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Self {
                Cell::Int(v as i128)
            }
        }
    )*};
}
cell_from_int!(u32, u64, usize, i64);

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

pub fn render_csv(header: &[&str], rows: &[Vec<Cell>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row.iter().map(Cell::render).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Output directory handle; creates the directory on first write.
#[derive(Debug, Clone)]
pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    fn write(&self, name: &str, contents: &str) -> std::io::Result<PathBuf> {
        fs::create_dir_all(&self.root)?;
        let path = self.path(name);
        let mut file = fs::File::create(&path)?;
        file.write_all(contents.as_bytes())?;
        Ok(path)
    }

    pub fn csv(&self, name: &str, header: &[&str], rows: &[Vec<Cell>]) -> std::io::Result<PathBuf> {
        self.write(name, &render_csv(header, rows))
    }

    pub fn json(&self, name: &str, doc: &Value) -> std::io::Result<PathBuf> {
        let mut text = serde_json::to_string_pretty(doc).map_err(std::io::Error::other)?;
        text.push('\n');
        self.write(name, &text)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }
}

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use forbid_core::{decode_graph6, encode_graph6, Graph};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::GraphFormat;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] forbid_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(forbid_core::Error::BudgetExhausted { .. }) => 2,
            CliError::Usage(_) | CliError::Core(forbid_core::Error::InvalidParameters(_)) => 3,
            CliError::Io { .. } => 4,
            CliError::Input { .. } | CliError::Core(_) => 5,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Input { .. } => "input",
            CliError::Core(forbid_core::Error::BudgetExhausted { .. }) => "budget",
            CliError::Core(_) => "core",
        }
    }
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn input_error(path: &Path, message: impl ToString) -> CliError {
    CliError::Input {
        path: path.to_path_buf(),
        message: message.to_string(),
    }
}

/// Writes `contents` to a temporary file next to `path`, then renames it.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_error(path))?;
    tmp.write_all(contents).map_err(io_error(path))?;
    tmp.as_file().sync_all().map_err(io_error(path))?;
    tmp.persist(path).map_err(|e| io_error(path)(e.error))?;
    Ok(())
}

/// Writes to `path`, or to stdout when absent.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(path) => write_atomic(path, contents.as_bytes()),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Provenance of an artifact: the tool version, the command, its
/// configuration, seed and budget (null when not applicable).
pub struct Stamp<'a, C: Serialize> {
    pub command: &'a str,
    pub config: &'a C,
    pub seed: Option<u64>,
    pub budget: Option<u64>,
}

impl<C: Serialize> Stamp<'_, C> {
    pub fn wrap(&self, data: &impl Serialize) -> Value {
        json!({
            "tool": "forbid",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "config": self.config,
            "seed": self.seed,
            "budget": self.budget,
            "data": data,
        })
    }
}

pub fn to_json(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    text
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(io_error(path))
}

/// Reads a graph in graph6, edge-list (`n m` then `u v` lines) or JSON
/// (`{"n": .., "edges": [[u, v], ..]}`) form, detected from the content.
pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = read_text(path)?;
    let trimmed = text.trim();
    let first = trimmed
        .chars()
        .next()
        .ok_or_else(|| input_error(path, "empty graph file"))?;
    if first == '{' {
        let value: Value = serde_json::from_str(trimmed).map_err(|e| input_error(path, e))?;
        let value = value.get("data").cloned().unwrap_or(value);
        let n = value["n"].as_u64().ok_or_else(|| input_error(path, "missing \"n\""))? as usize;
        let edges: Vec<(usize, usize)> =
            serde_json::from_value(value["edges"].clone()).map_err(|e| input_error(path, e))?;
        Ok(Graph::from_edges(n, &edges).map_err(|e| input_error(path, e))?)
    } else if first.is_ascii_digit() {
        Graph::from_edge_list(trimmed).map_err(|e| input_error(path, e))
    } else {
        let line = trimmed.strip_prefix(">>graph6<<").unwrap_or(trimmed);
        let line = line.lines().next().unwrap_or_default().trim();
        decode_graph6(line).map_err(|e| input_error(path, e))
    }
}

pub fn render_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => format!("{}\n", encode_graph6(g)),
        GraphFormat::Edgelist => g.to_edge_list(),
        GraphFormat::Json => to_json(&json!({ "n": g.n(), "edges": g.edges() })),
    }
}

/// Reads a JSON artifact, unwrapping the envelope when present.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let value: Value = serde_json::from_str(&read_text(path)?).map_err(|e| input_error(path, e))?;
    let payload = match value.get("data") {
        Some(data) if value.get("tool").is_some() => data.clone(),
        _ => value,
    };
    serde_json::from_value(payload).map_err(|e| input_error(path, e))
}

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, OutputFormat};
use crate::error::{io_err, Result};
use crate::table::Table;

/// Bumped whenever any result table changes its columns.
pub const SCHEMA_VERSION: u32 = 1;

/// Trials `first..first + count` of one `(seed, lane)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamSpan {
    pub seed: [u64; 2],
    pub lane: u64,
    pub first: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema: String,
    pub config_hash: String,
    pub config: ExperimentConfig,
    pub table: Table,
    /// Random streams consumed by each table row.
    pub streams: Vec<Vec<StreamSpan>>,
    pub notes: Vec<String>,
    pub wall_clock_seconds: f64,
    pub threads: usize,
}

#[derive(Debug, Serialize)]
struct Sidecar<'a> {
    schema: &'a str,
    config_hash: &'a str,
    config: &'a ExperimentConfig,
    columns: &'a [String],
    rows: usize,
    streams: &'a [Vec<StreamSpan>],
    notes: &'a [String],
    wall_clock_seconds: f64,
    threads: usize,
}

pub fn schema_name(kind: &str) -> String {
    format!("ogp-lab/{kind}/v{SCHEMA_VERSION}")
}

/// Sidecar path next to a CSV output: `results.csv` gets
/// `results.csv.meta.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

impl ResultRecord {
    fn comments(&self) -> Vec<String> {
        let mut out = vec![
            format!("schema: {}", self.schema),
            format!("config: {}", self.config_hash),
        ];
        out.extend(self.notes.iter().cloned());
        out
    }

    /// Deterministic CSV bytes: comment header, column row, data rows.
    /// Timing and thread count live in the sidecar only.
    pub fn csv_bytes(&self) -> Result<Vec<u8>> {
        self.table.to_csv(&self.comments())
    }

    pub fn sidecar_json(&self) -> Result<String> {
        let s = Sidecar {
            schema: &self.schema,
            config_hash: &self.config_hash,
            config: &self.config,
            columns: &self.table.columns,
            rows: self.table.rows.len(),
            streams: &self.streams,
            notes: &self.notes,
            wall_clock_seconds: self.wall_clock_seconds,
            threads: self.threads,
        };
        Ok(serde_json::to_string_pretty(&s)?)
    }

    /// CSV plus sidecar, or one JSON document holding the whole record.
    pub fn write(&self, path: &Path, format: OutputFormat) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(io_err(dir))?;
        }
        match format {
            OutputFormat::Csv => {
                std::fs::write(path, self.csv_bytes()?).map_err(io_err(path))?;
                let side = sidecar_path(path);
                std::fs::write(&side, self.sidecar_json()? + "\n").map_err(io_err(&side))
            }
            OutputFormat::Json => std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")
                .map_err(io_err(path)),
        }
    }
}

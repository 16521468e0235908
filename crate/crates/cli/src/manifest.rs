//! Run manifests: what ran, with which inputs, producing which files.

use std::path::Path;
use std::time::Instant;

use polyacc_core::{Error, Result};
use serde::Serialize;

/// Reproducibility record emitted by every subcommand; the only place wall
/// time appears, so result payloads stay byte-deterministic.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    /// Spec path or example name, when the run had one.
    pub input: Option<String>,
    pub parameters: serde_json::Value,
    pub outputs: Vec<String>,
    pub wall_ms: u64,
    pub version: &'static str,
}

impl RunManifest {
    pub fn new(command: &str, input: Option<String>, parameters: serde_json::Value) -> Self {
        RunManifest {
            command: command.to_string(),
            input,
            parameters,
            outputs: Vec::new(),
            wall_ms: 0,
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    pub fn add_output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    pub fn finish(&mut self, started: Instant) {
        self.wall_ms = started.elapsed().as_millis() as u64;
    }

    /// One-line JSON to stderr so stdout stays the report alone.
    pub fn emit_stderr(&self) {
        if let Ok(line) = serde_json::to_string(self) {
            eprintln!("{line}");
        }
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        let body = serde_json::to_string_pretty(self).map_err(|e| Error::SingularInput(e.to_string()))?;
        std::fs::write(path, body + "\n").map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

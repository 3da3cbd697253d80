use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct Timings {
    pub elapsed_ms: f64,
}

/// Machine-readable outcome of one command, printed to stdout as JSON.
#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub args: Value,
    pub inputs: Vec<Input>,
    pub result: Value,
    pub timings: Timings,
    pub ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

pub struct Recorder {
    command: String,
    args: Value,
    inputs: Vec<Input>,
    violations: Vec<String>,
    start: Instant,
}

impl Recorder {
    pub fn new(command: &str, args: Value) -> Self {
        Recorder {
            command: command.to_string(),
            args,
            inputs: Vec::new(),
            violations: Vec::new(),
            start: Instant::now(),
        }
    }

    /// Reads a file and records its content hash.
    pub fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        self.inputs.push(Input {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        });
        Ok(text)
    }

    pub fn violation(&mut self, message: impl Into<String>) {
        self.violations.push(message.into());
    }

    pub fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.violation(message());
        }
    }

    pub fn finish(self, result: Value) -> Report {
        Report {
            command: self.command,
            args: self.args,
            inputs: self.inputs,
            result,
            timings: Timings {
                elapsed_ms: self.start.elapsed().as_secs_f64() * 1e3,
            },
            ok: self.violations.is_empty(),
            violations: self.violations,
        }
    }
}

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Context;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// The `run.json` written by every command: resolved parameters, seeds and
/// SHA-256 hashes of every input and output file.
pub struct RunRecord {
    command: String,
    params: Value,
    inputs: Vec<PathBuf>,
    outputs: Vec<PathBuf>,
    warnings: Vec<String>,
    failures: Vec<String>,
    extra: BTreeMap<String, Value>,
}

impl RunRecord {
    pub fn new(command: &str, params: &impl Serialize) -> anyhow::Result<Self> {
        Ok(RunRecord {
            command: command.to_string(),
            params: serde_json::to_value(params)?,
            inputs: Vec::new(),
            outputs: Vec::new(),
            warnings: Vec::new(),
            failures: Vec::new(),
            extra: BTreeMap::new(),
        })
    }

    pub fn input(&mut self, p: impl Into<PathBuf>) {
        self.inputs.push(p.into());
    }

    pub fn output(&mut self, p: impl Into<PathBuf>) {
        self.outputs.push(p.into());
    }

    pub fn warn(&mut self, w: impl Into<String>) {
        let w = w.into();
        eprintln!("warning: {w}");
        self.warnings.push(w);
    }

    pub fn fail(&mut self, f: impl Into<String>) {
        let f = f.into();
        eprintln!("failed: {f}");
        self.failures.push(f);
    }

    pub fn failures(&self) -> usize {
        self.failures.len()
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) -> anyhow::Result<()> {
        self.extra.insert(key.to_string(), serde_json::to_value(v)?);
        Ok(())
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        let hashes = |files: &[PathBuf]| -> anyhow::Result<BTreeMap<String, String>> {
            files
                .iter()
                .map(|f| Ok((f.display().to_string(), sha256_file(f)?)))
                .collect()
        };
        let started = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let mut v = json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "timestamp_unix": started,
            "params": self.params,
            "inputs": hashes(&self.inputs)?,
            "outputs": hashes(&self.outputs)?,
            "warnings": self.warnings,
            "failures": self.failures,
        });
        for (k, x) in &self.extra {
            v[k] = x.clone();
        }
        std::fs::write(path, serde_json::to_string_pretty(&v)?).with_context(|| format!("writing {}", path.display()))
    }
}

pub fn sha256_file(path: &Path) -> anyhow::Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("hashing {}", path.display()))?;
    let mut out = String::with_capacity(64);
    for b in Sha256::digest(&bytes) {
        write!(out, "{b:02x}").expect("string write");
    }
    Ok(out)
}

/// `run.json` in `dir`, unless overridden.
pub fn record_in_dir(dir: &Path, over: &Option<PathBuf>) -> PathBuf {
    over.clone().unwrap_or_else(|| dir.join("run.json"))
}

/// `<file>.run.json`, unless overridden.
pub fn record_beside(file: &Path, over: &Option<PathBuf>) -> PathBuf {
    over.clone().unwrap_or_else(|| {
        let mut s = file.as_os_str().to_owned();
        s.push(".run.json");
        PathBuf::from(s)
    })
}

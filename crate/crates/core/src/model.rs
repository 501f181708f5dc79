//! The trained network and its on-disk form.
//!
//! Model files use the `nnx-json/1` layout:
//!
//! ```json
//! {"format":"nnx-json/1","arch":[784,200,100,10],
//!  "weights":[[...row-major W_1...], ...],
//!  "meta":{"seed":7,"dataset_id":"mnist","epochs":30,"train_acc":0.8,"test_acc":0.79}}
//! ```
//!
//! `W_a` has `arch[a-1]` rows and `arch[a]` columns. Unknown `meta` keys are
//! carried through a load/save cycle untouched.

use std::fs;
use std::io::Write;
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub const MODEL_FORMAT: &str = "nnx-json/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkMeta {
    pub seed: u64,
    pub dataset_id: String,
    pub epochs: usize,
    pub train_acc: f64,
    pub test_acc: f64,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl NetworkMeta {
    pub fn untrained(seed: u64) -> Self {
        NetworkMeta {
            seed,
            dataset_id: String::new(),
            epochs: 0,
            train_acc: 0.0,
            test_acc: 0.0,
            extra: Map::new(),
        }
    }
}

/// A bias-free fully connected feed-forward network.
///
/// `weights[a]` connects layer `a` to layer `a + 1` and has shape
/// `arch[a] x arch[a + 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LayeredNetwork {
    arch: Vec<usize>,
    weights: Vec<DMatrix<f64>>,
    pub meta: NetworkMeta,
}

impl LayeredNetwork {
    pub fn new(arch: Vec<usize>, weights: Vec<DMatrix<f64>>, meta: NetworkMeta) -> Result<Self> {
        validate_arch(&arch)?;
        if weights.len() != arch.len() - 1 {
            return Err(Error::Structure(format!(
                "{} layers need {} weight matrices, got {}",
                arch.len(),
                arch.len() - 1,
                weights.len()
            )));
        }
        for (a, w) in weights.iter().enumerate() {
            if w.nrows() != arch[a] || w.ncols() != arch[a + 1] {
                return Err(Error::Structure(format!(
                    "weights[{a}] is {}x{}, expected {}x{}",
                    w.nrows(),
                    w.ncols(),
                    arch[a],
                    arch[a + 1]
                )));
            }
            if let Some(v) = w.iter().find(|v| !v.is_finite()) {
                return Err(Error::Structure(format!("weights[{a}] contains non-finite value {v}")));
            }
        }
        Ok(LayeredNetwork { arch, weights, meta })
    }

    /// Network with every weight set to `value`.
    pub fn constant(arch: &[usize], value: f64) -> Result<Self> {
        validate_arch(arch)?;
        let weights = arch
            .windows(2)
            .map(|p| DMatrix::from_element(p[0], p[1], value))
            .collect();
        LayeredNetwork::new(arch.to_vec(), weights, NetworkMeta::untrained(0))
    }

    pub fn arch(&self) -> &[usize] {
        &self.arch
    }

    pub fn weights(&self) -> &[DMatrix<f64>] {
        &self.weights
    }

    /// Mutable access for the trainer; shapes are fixed by construction.
    pub(crate) fn weights_mut(&mut self) -> &mut [DMatrix<f64>] {
        &mut self.weights
    }

    /// Number of weight matrices (`d`).
    pub fn depth(&self) -> usize {
        self.weights.len()
    }

    pub fn neuron_count(&self) -> usize {
        self.arch.iter().sum()
    }

    pub fn synapse_count(&self) -> usize {
        self.arch.windows(2).map(|p| p[0] * p[1]).sum()
    }

    /// Indices of the hidden layers, `1..d`.
    pub fn hidden_layers(&self) -> std::ops::Range<usize> {
        1..self.arch.len() - 1
    }

    pub fn hidden_count(&self) -> usize {
        self.arch[self.hidden_layers()].iter().sum()
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let json = self.to_json()?;
        let tmp = path.with_extension("json.partial");
        let mut f = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
        f.write_all(json.as_bytes()).map_err(|e| Error::io(&tmp, e))?;
        f.sync_all().map_err(|e| Error::io(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Result<String> {
        let file = ModelFile {
            format: MODEL_FORMAT.to_string(),
            arch: self.arch.clone(),
            weights: self
                .weights
                .iter()
                .map(|w| w.transpose().iter().copied().collect())
                .collect(),
            meta: self.meta.clone(),
        };
        Ok(serde_json::to_string(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| Error::format("model", e.to_string()))?;
        if file.format != MODEL_FORMAT {
            return Err(Error::format(
                "format",
                format!("expected {MODEL_FORMAT:?}, found {:?}", file.format),
            ));
        }
        validate_arch(&file.arch).map_err(|e| Error::format("arch", e.to_string()))?;
        if file.weights.len() != file.arch.len() - 1 {
            return Err(Error::format(
                "weights",
                format!(
                    "expected {} matrices for arch {:?}, found {}",
                    file.arch.len() - 1,
                    file.arch,
                    file.weights.len()
                ),
            ));
        }
        let mut weights = Vec::with_capacity(file.weights.len());
        for (a, flat) in file.weights.iter().enumerate() {
            let (rows, cols) = (file.arch[a], file.arch[a + 1]);
            if flat.len() != rows * cols {
                return Err(Error::format(
                    format!("weights[{a}]"),
                    format!("expected {rows}x{cols} = {} values, found {}", rows * cols, flat.len()),
                ));
            }
            if let Some(i) = flat.iter().position(|v| !v.is_finite()) {
                return Err(Error::format(format!("weights[{a}][{i}]"), "non-finite value"));
            }
            weights.push(DMatrix::from_row_slice(rows, cols, flat));
        }
        for (field, v) in [("meta.train_acc", file.meta.train_acc), ("meta.test_acc", file.meta.test_acc)] {
            if !v.is_finite() {
                return Err(Error::format(field, "non-finite value"));
            }
        }
        LayeredNetwork::new(file.arch, weights, file.meta)
    }
}

fn validate_arch(arch: &[usize]) -> Result<()> {
    if arch.len() < 2 {
        return Err(Error::Structure(format!("need at least two layers, got {arch:?}")));
    }
    if arch.contains(&0) {
        return Err(Error::Structure(format!("empty layer in {arch:?}")));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format: String,
    arch: Vec<usize>,
    weights: Vec<Vec<f64>>,
    meta: NetworkMeta,
}

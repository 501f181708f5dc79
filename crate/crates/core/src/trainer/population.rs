use std::collections::HashSet;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{evaluate, init_network, train, Dataset, TrainingConfig};
use crate::error::{Error, Result};
use crate::model::LayeredNetwork;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PopulationConfig {
    pub training: TrainingConfig,
    pub weight_seeds: Vec<u64>,
    pub dataset_id: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Trained,
    /// A matching model file already existed and was kept.
    Reused,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub seed: u64,
    pub model_path: String,
    pub train_acc: Option<f64>,
    pub test_acc: Option<f64>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn model_file(seed: u64) -> String {
    format!("model-{seed}.json")
}

/// Trains one network per weight seed into `out_dir`, keeping models that
/// are already there, and writes `manifest.json`. A failing network is
/// recorded and does not stop the others.
pub fn generate_population(
    cfg: &PopulationConfig,
    train_set: &Dataset,
    test_set: &Dataset,
    out_dir: &Path,
) -> Result<Vec<ManifestEntry>> {
    cfg.training.validate()?;
    let mut seen = HashSet::new();
    if let Some(dup) = cfg.weight_seeds.iter().find(|s| !seen.insert(**s)) {
        return Err(Error::InvalidArgument(format!("weight seed {dup} listed more than once")));
    }
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let entries: Vec<ManifestEntry> = cfg
        .weight_seeds
        .par_iter()
        .map(|&seed| {
            let name = model_file(seed);
            let path = out_dir.join(&name);
            let entry = |status, net: Option<&LayeredNetwork>, error| ManifestEntry {
                seed,
                model_path: name.clone(),
                train_acc: net.map(|n| n.meta.train_acc),
                test_acc: net.map(|n| n.meta.test_acc),
                status,
                error,
            };
            if let Some(net) = reusable(&path, cfg) {
                return entry(Status::Reused, Some(&net), None);
            }
            match train_one(cfg, seed, train_set, test_set, &path) {
                Ok(net) => entry(Status::Trained, Some(&net), None),
                Err(e) => entry(Status::Failed, None, Some(e.to_string())),
            }
        })
        .collect();
    write_manifest(out_dir, &entries)?;
    Ok(entries)
}

fn reusable(path: &Path, cfg: &PopulationConfig) -> Option<LayeredNetwork> {
    let net = LayeredNetwork::load(path).ok()?;
    let same = net.arch() == cfg.training.arch.as_slice()
        && net.meta.seed == path_seed(path)?
        && net.meta.epochs == cfg.training.epochs
        && net.meta.dataset_id == cfg.dataset_id;
    same.then_some(net)
}

fn path_seed(path: &Path) -> Option<u64> {
    path.file_stem()?.to_str()?.strip_prefix("model-")?.parse().ok()
}

fn train_one(
    cfg: &PopulationConfig,
    seed: u64,
    train_set: &Dataset,
    test_set: &Dataset,
    path: &Path,
) -> Result<LayeredNetwork> {
    let t = &cfg.training;
    let mut net = init_network(&t.arch, seed, t.init_half_range)?;
    let history = train(&mut net, train_set, t)?;
    net.meta.dataset_id = cfg.dataset_id.clone();
    net.meta.epochs = t.epochs;
    net.meta.train_acc = evaluate(&net, train_set)?;
    net.meta.test_acc = evaluate(&net, test_set)?;
    let extra = &mut net.meta.extra;
    extra.insert("data_seed".into(), json!(t.data_seed));
    extra.insert("learning_rate".into(), json!(t.learning_rate));
    extra.insert("batch_size".into(), json!(t.batch_size));
    extra.insert("init_half_range".into(), json!(t.init_half_range));
    extra.insert("train_samples".into(), json!(train_set.len()));
    extra.insert("test_samples".into(), json!(test_set.len()));
    if let Some(s) = train_set.scaling() {
        extra.insert("pixel_scaling".into(), serde_json::to_value(s)?);
    }
    extra.insert("history".into(), serde_json::to_value(&history)?);
    net.save(path)?;
    Ok(net)
}

pub fn write_manifest(out_dir: &Path, entries: &[ManifestEntry]) -> Result<PathBuf> {
    let path = out_dir.join(MANIFEST_FILE);
    let tmp = out_dir.join(format!("{MANIFEST_FILE}.partial"));
    std::fs::write(&tmp, serde_json::to_string_pretty(entries)?).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, &path).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

pub fn read_manifest(out_dir: &Path) -> Result<Vec<ManifestEntry>> {
    let path = out_dir.join(MANIFEST_FILE);
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    Ok(serde_json::from_str(&text)?)
}

//! Measures CSV plus its `<csv>.networks.json` sidecar, which carries the
//! per-network accuracies the CSV has no room for.

use std::fs::File;
use std::path::{Path, PathBuf};

use anyhow::Context;
use neurotopo::centrality::read_measures_csv;
use neurotopo::descriptors::MeasuredNetwork;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkInfo {
    pub network_id: String,
    pub model_path: String,
    pub train_acc: f64,
    pub test_acc: f64,
}

pub fn sidecar_path(csv: &Path) -> PathBuf {
    let mut s = csv.as_os_str().to_owned();
    s.push(".networks.json");
    PathBuf::from(s)
}

pub fn write_sidecar(csv: &Path, infos: &[NetworkInfo]) -> anyhow::Result<PathBuf> {
    let path = sidecar_path(csv);
    std::fs::write(&path, serde_json::to_string_pretty(infos)?).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

/// Reads a population. Networks missing from the sidecar get a NaN accuracy
/// and a warning.
pub fn load_population(csv: &Path, warnings: &mut Vec<String>) -> anyhow::Result<Vec<MeasuredNetwork>> {
    let file = File::open(csv).map_err(|e| CliError::Data(format!("{}: {e}", csv.display())))?;
    let tables = read_measures_csv(file).with_context(|| format!("reading {}", csv.display()))?;
    if tables.is_empty() {
        return Err(CliError::Data(format!("{} holds no networks", csv.display())).into());
    }
    let side = sidecar_path(csv);
    let infos: Vec<NetworkInfo> = match std::fs::read_to_string(&side) {
        Ok(text) => serde_json::from_str(&text).with_context(|| format!("parsing {}", side.display()))?,
        Err(_) => {
            warnings.push(format!("{} not found; accuracies unknown", side.display()));
            Vec::new()
        }
    };
    Ok(tables
        .into_iter()
        .map(|table| {
            let acc = infos.iter().find(|i| i.network_id == table.network_id).map(|i| i.test_acc);
            if acc.is_none() && !infos.is_empty() {
                warnings.push(format!("no accuracy recorded for {}", table.network_id));
            }
            MeasuredNetwork { test_acc: acc.unwrap_or(f64::NAN), table }
        })
        .collect())
}

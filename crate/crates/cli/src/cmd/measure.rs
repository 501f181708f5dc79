use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::Context;
use clap::{Args, ValueEnum};
use neurotopo::centrality::{measure_all, write_measures_csv, CliqueBudget, ConductanceMode, MeasureConfig};
use neurotopo::trainer::{read_manifest, Status, MANIFEST_FILE};
use neurotopo::LayeredNetwork;
use rayon::prelude::*;
use serde::Serialize;

use super::parse_measures;
use crate::population::{write_sidecar, NetworkInfo};
use crate::record::{record_beside, RunRecord};
use crate::{CliError, RecordArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CfcMode {
    Raw,
    Absolute,
}

#[derive(Args, Debug, Serialize)]
pub struct MeasureArgs {
    #[arg(long)]
    pub models: PathBuf,
    /// Comma-separated ids from s,snn,so,sg,mc,bc,hc,cfc, or `all`.
    #[arg(long, default_value = "all")]
    pub measures: String,
    #[arg(long)]
    pub out: PathBuf,
    /// Maximal cliques enumerated per network before giving up.
    #[arg(long, default_value_t = 10_000_000)]
    pub clique_budget: u64,
    #[arg(long, default_value_t = 300)]
    pub clique_seconds: u64,
    /// Conductances for current-flow closeness.
    #[arg(long, value_enum, default_value = "raw")]
    pub cfc_mode: CfcMode,
    #[command(flatten)]
    #[serde(skip)]
    pub record: RecordArgs,
}

/// Model files of a population directory: the manifest's successful entries
/// if there is one, otherwise every `*.json` except run records.
pub fn model_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    if !dir.is_dir() {
        return Err(CliError::Data(format!("models directory {} not found", dir.display())).into());
    }
    let mut files: Vec<PathBuf> = if dir.join(MANIFEST_FILE).is_file() {
        read_manifest(dir)?
            .into_iter()
            .filter(|e| e.status != Status::Failed)
            .map(|e| dir.join(e.model_path))
            .collect()
    } else {
        std::fs::read_dir(dir)
            .with_context(|| format!("listing {}", dir.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                name.ends_with(".json") && name != "run.json" && !name.ends_with(".run.json")
            })
            .collect()
    };
    files.sort_by_key(|p| {
        let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let seed = stem.strip_prefix("model-").and_then(|s| s.parse::<u64>().ok());
        (seed.is_none(), seed, stem)
    });
    if files.is_empty() {
        return Err(CliError::Data(format!("no models in {}", dir.display())).into());
    }
    Ok(files)
}

pub fn network_id(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

pub fn run(a: MeasureArgs) -> anyhow::Result<()> {
    let measures = parse_measures(&a.measures)?;
    let cfg = MeasureConfig {
        clique_budget: CliqueBudget {
            max_cliques: a.clique_budget,
            max_time: Duration::from_secs(a.clique_seconds),
        },
        cfc_mode: match a.cfc_mode {
            CfcMode::Raw => ConductanceMode::Raw,
            CfcMode::Absolute => ConductanceMode::Absolute,
        },
    };
    let files = model_files(&a.models)?;
    let results: Vec<_> = files
        .par_iter()
        .map(|f| {
            let net = LayeredNetwork::load(f)?;
            let mut table = measure_all(&net, &measures, &cfg)?;
            table.network_id = network_id(f);
            let info = NetworkInfo {
                network_id: table.network_id.clone(),
                model_path: f.display().to_string(),
                train_acc: net.meta.train_acc,
                test_acc: net.meta.test_acc,
            };
            Ok::<_, neurotopo::Error>((table, info))
        })
        .collect();

    let mut rec = RunRecord::new("measure", &a)?;
    rec.set("resolved_measures", &measures)?;
    let (mut tables, mut infos) = (Vec::new(), Vec::new());
    for (f, r) in files.iter().zip(results) {
        rec.input(f);
        match r {
            Ok((t, i)) => {
                tables.push(t);
                infos.push(i);
            }
            Err(e) => rec.fail(format!("{}: {e}", f.display())),
        }
    }
    if tables.is_empty() {
        return Err(CliError::Partial(format!("all {} networks failed", files.len())).into());
    }
    let out = File::create(&a.out).map_err(|e| CliError::Data(format!("{}: {e}", a.out.display())))?;
    write_measures_csv(BufWriter::new(out), &tables)?;
    let side = write_sidecar(&a.out, &infos)?;
    rec.output(&a.out);
    rec.output(side);
    rec.write(&record_beside(&a.out, &a.record.run_json))?;
    println!("{} networks x {} neurons -> {}", tables.len(), tables[0].len(), a.out.display());
    if rec.failures() > 0 {
        return Err(CliError::Partial(format!("{} of {} networks failed", rec.failures(), files.len())).into());
    }
    Ok(())
}

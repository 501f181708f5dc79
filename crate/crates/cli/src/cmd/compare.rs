use std::path::PathBuf;

use clap::Args;
use neurotopo::bon::{cross_benchmark_jsd, Vocabulary};
use neurotopo::centrality::{measure_all, MeasureConfig};
use neurotopo::descriptors::MeasuredNetwork;
use neurotopo::LayeredNetwork;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::measure::{model_files, network_id};
use crate::population::load_population;
use crate::record::{record_beside, RunRecord};
use crate::RecordArgs;

#[derive(Args, Debug, Serialize)]
pub struct CompareArgs {
    /// Vocabulary from the other benchmark.
    #[arg(long)]
    pub vocab_a: PathBuf,
    /// The population's own vocabulary.
    #[arg(long)]
    pub vocab_b: PathBuf,
    /// A measures CSV, a directory containing `measures.csv`, or a models
    /// directory (measured on the fly).
    #[arg(long)]
    pub population: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    #[serde(skip)]
    pub record: RecordArgs,
}

pub fn run(a: CompareArgs) -> anyhow::Result<()> {
    let va = Vocabulary::load(&a.vocab_a)?;
    let vb = Vocabulary::load(&a.vocab_b)?;
    let mut rec = RunRecord::new("compare", &a)?;
    rec.input(&a.vocab_a);
    rec.input(&a.vocab_b);
    let csv = if a.population.is_dir() { a.population.join("measures.csv") } else { a.population.clone() };
    let population: Vec<MeasuredNetwork> = if csv.is_file() {
        let mut warnings = Vec::new();
        let p = load_population(&csv, &mut warnings)?;
        warnings.into_iter().for_each(|w| rec.warn(w));
        rec.input(&csv);
        p
    } else {
        let files = model_files(&a.population)?;
        files.iter().for_each(|f| rec.input(f));
        files
            .par_iter()
            .map(|f| {
                let net = LayeredNetwork::load(f)?;
                let mut table = measure_all(&net, &vb.measures, &MeasureConfig::default())?;
                table.network_id = network_id(f);
                Ok(MeasuredNetwork { table, test_acc: net.meta.test_acc })
            })
            .collect::<neurotopo::Result<_>>()?
    };
    let summary = cross_benchmark_jsd(&va, &vb, &population)?;
    let per: Vec<_> = population
        .iter()
        .zip(&summary.per_network)
        .map(|(n, j)| json!({"network_id": n.table.network_id, "jsd": j}))
        .collect();
    let out = json!({
        "source_benchmark": va.benchmark_id,
        "native_benchmark": vb.benchmark_id,
        "networks": population.len(),
        "mean": summary.mean,
        "std": summary.std,
        "per_network": per,
    });
    std::fs::write(&a.out, serde_json::to_string_pretty(&out)?)
        .map_err(|e| crate::CliError::Data(format!("{}: {e}", a.out.display())))?;
    rec.output(&a.out);
    rec.write(&record_beside(&a.out, &a.record.run_json))?;
    println!("JSD {:.4} ± {:.4} over {} networks", summary.mean, summary.std, population.len());
    Ok(())
}

use std::fs::File;
use std::path::PathBuf;

use anyhow::Context;
use clap::{ArgGroup, Args, Subcommand};
use neurotopo::bon::{elbow_scan, write_occurrence_csv, KMeansConfig, Vocabulary};
use neurotopo::descriptors::FeatureMatrix;
use serde::Serialize;

use super::parse_measures;
use crate::population::load_population;
use crate::record::{record_beside, RunRecord};
use crate::{CliError, RecordArgs};

#[derive(Subcommand, Debug)]
pub enum VocabCommand {
    /// Cluster hidden-neuron descriptors into a vocabulary.
    Build(BuildArgs),
    /// Type every hidden neuron and write per-network occurrence histograms.
    Assign(AssignArgs),
}

#[derive(Args, Debug, Serialize)]
#[command(group(ArgGroup::new("size").required(true).args(["k", "elbow"])))]
pub struct BuildArgs {
    #[arg(long)]
    pub measures_csv: PathBuf,
    /// Descriptor measures.
    #[arg(long, default_value = "s,bc,sg")]
    pub measures: String,
    #[arg(long)]
    pub k: Option<usize>,
    /// Scan k over KMIN..=KMAX and keep the knee of the distortion curve.
    #[arg(long, num_args = 2, value_names = ["KMIN", "KMAX"])]
    pub elbow: Option<Vec<usize>>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub restarts: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 300)]
    pub max_iter: usize,
    #[arg(long, default_value = "")]
    pub benchmark_id: String,
    #[arg(long)]
    pub out: PathBuf,
    /// Distortion curve output; defaults to `<out>.distortion.csv`.
    #[arg(long)]
    pub distortion_csv: Option<PathBuf>,
    #[command(flatten)]
    #[serde(skip)]
    pub record: RecordArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct AssignArgs {
    #[arg(long)]
    pub vocab: PathBuf,
    #[arg(long)]
    pub measures_csv: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    #[serde(skip)]
    pub record: RecordArgs,
}

pub fn run(c: VocabCommand) -> anyhow::Result<()> {
    match c {
        VocabCommand::Build(a) => build(a),
        VocabCommand::Assign(a) => assign(a),
    }
}

fn build(a: BuildArgs) -> anyhow::Result<()> {
    let measures = parse_measures(&a.measures)?;
    let mut rec = RunRecord::new("vocab build", &a)?;
    let mut warnings = Vec::new();
    let population = load_population(&a.measures_csv, &mut warnings)?;
    let features = FeatureMatrix::build(&population, &measures).map_err(|e| CliError::Usage(e.to_string()))?;
    warnings.extend(features.warnings.iter().cloned());
    if features.excluded_rows > 0 {
        warnings.push(format!("{} neurons with undefined measures excluded", features.excluded_rows));
    }
    for w in warnings {
        rec.warn(w);
    }
    let rows = features.row_count();
    let base = KMeansConfig {
        k: 2,
        restarts: a.restarts,
        rel_tol: a.rel_tol,
        max_iter: a.max_iter,
        seed: a.seed,
    };
    let k = match (&a.k, &a.elbow) {
        (Some(k), _) => *k,
        (None, Some(range)) => {
            let (kmin, kmax) = (range[0], range[1]);
            if kmin < 2 || kmin >= kmax || kmax > rows {
                return Err(CliError::Usage(format!("--elbow needs 2 <= KMIN < KMAX <= {rows}")).into());
            }
            let scan = elbow_scan(&features.rows, kmin, kmax, &base)?;
            let path = a.distortion_csv.clone().unwrap_or_else(|| suffixed(&a.out, ".distortion.csv"));
            let mut w = csv::Writer::from_path(&path).with_context(|| format!("writing {}", path.display()))?;
            w.write_record(["k", "inertia", "chord_distance"])?;
            for i in 0..scan.ks.len() {
                w.write_record([scan.ks[i].to_string(), scan.inertias[i].to_string(), scan.chord_distances[i].to_string()])?;
            }
            w.flush()?;
            rec.output(&path);
            if scan.low_confidence {
                rec.warn(format!("no pronounced elbow; k = {} chosen with low confidence", scan.best_k));
            }
            println!("elbow: k* = {}{}", scan.best_k, if scan.low_confidence { " (low confidence)" } else { "" });
            rec.set("elbow", &scan)?;
            scan.best_k
        }
        (None, None) => unreachable!("clap enforces --k or --elbow"),
    };
    if k < 2 || k > rows {
        return Err(CliError::Usage(format!("k = {k} out of range 2..={rows}")).into());
    }
    let vocab = Vocabulary::fit(&features, &KMeansConfig { k, ..base }, &a.benchmark_id)?;
    vocab.save(&a.out)?;
    rec.input(&a.measures_csv);
    rec.output(&a.out);
    rec.set("rows", rows)?;
    rec.write(&record_beside(&a.out, &a.record.run_json))?;
    println!("vocabulary with k = {k} over {rows} neurons -> {}", a.out.display());
    Ok(())
}

fn assign(a: AssignArgs) -> anyhow::Result<()> {
    let vocab = Vocabulary::load(&a.vocab)?;
    let mut rec = RunRecord::new("vocab assign", &a)?;
    let mut warnings = Vec::new();
    let population = load_population(&a.measures_csv, &mut warnings)?;
    for w in warnings {
        rec.warn(w);
    }
    let mut rows = Vec::with_capacity(population.len());
    for net in &population {
        let h = vocab.occurrence(&net.table)?;
        if h.excluded > 0 {
            rec.warn(format!("{}: {} neurons with undefined measures excluded", net.table.network_id, h.excluded));
        }
        rows.push((net.table.network_id.clone(), net.test_acc, h));
    }
    let out = File::create(&a.out).map_err(|e| CliError::Data(format!("{}: {e}", a.out.display())))?;
    write_occurrence_csv(out, &rows)?;
    rec.input(&a.vocab);
    rec.input(&a.measures_csv);
    rec.output(&a.out);
    rec.write(&record_beside(&a.out, &a.record.run_json))?;
    println!("{} networks typed -> {}", rows.len(), a.out.display());
    Ok(())
}

pub fn suffixed(p: &std::path::Path, suffix: &str) -> PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

use std::path::{Path, PathBuf};

use clap::Args;
use neurotopo::trainer::{generate_population, load_idx, PixelScaling, PopulationConfig, Split, Status, TrainingConfig};
use serde::Serialize;

use crate::record::{record_in_dir, RunRecord};
use crate::{CliError, RecordArgs, Scaling};

pub const TRAIN_IMAGES: &str = "train-images-idx3-ubyte";
pub const TRAIN_LABELS: &str = "train-labels-idx1-ubyte";
pub const TEST_IMAGES: &str = "t10k-images-idx3-ubyte";
pub const TEST_LABELS: &str = "t10k-labels-idx1-ubyte";

#[derive(Args, Debug, Serialize)]
pub struct TrainArgs {
    /// Directory holding the four IDX files of an MNIST-style benchmark.
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub count: usize,
    /// Networks use weight seeds base, base+1, ...
    #[arg(long)]
    pub weight_seed_base: u64,
    /// Seed of the batch order shared by every network.
    #[arg(long)]
    pub data_seed: u64,
    #[arg(long, default_value = "784,200,100,10")]
    pub arch: String,
    #[arg(long, default_value_t = 30)]
    pub epochs: usize,
    #[arg(long, default_value_t = 0.01)]
    pub lr: f64,
    #[arg(long, default_value_t = 100)]
    pub batch: usize,
    #[arg(long, default_value_t = 0.9)]
    pub init_range: f64,
    #[arg(long)]
    pub out: PathBuf,
    /// Use only the first N training samples.
    #[arg(long)]
    pub train_limit: Option<usize>,
    /// Use only the first N test samples.
    #[arg(long)]
    pub test_limit: Option<usize>,
    #[arg(long, value_enum, default_value = "unit")]
    pub scaling: Scaling,
    /// Recorded in every model; defaults to the data directory name.
    #[arg(long)]
    pub dataset_id: Option<String>,
    #[command(flatten)]
    #[serde(skip)]
    pub record: RecordArgs,
}

pub fn parse_arch(s: &str) -> anyhow::Result<Vec<usize>> {
    let arch: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--arch must be comma-separated layer sizes, got {s:?}")))?;
    if arch.len() < 2 || arch.contains(&0) {
        return Err(CliError::Usage(format!("--arch needs at least two positive sizes, got {s:?}")).into());
    }
    Ok(arch)
}

pub fn run(a: TrainArgs) -> anyhow::Result<()> {
    let arch = parse_arch(&a.arch)?;
    if a.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()).into());
    }
    let training = TrainingConfig {
        arch,
        learning_rate: a.lr,
        batch_size: a.batch,
        epochs: a.epochs,
        init_half_range: a.init_range,
        data_seed: a.data_seed,
    };
    training.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    if !a.data.is_dir() {
        return Err(CliError::Data(format!("data directory {} not found", a.data.display())).into());
    }
    let file = |n: &str| a.data.join(n);
    let mut train = load_idx(&file(TRAIN_IMAGES), &file(TRAIN_LABELS), Split::Train)?;
    let mut test = load_idx(&file(TEST_IMAGES), &file(TEST_LABELS), Split::Test)?;
    if let Some(n) = a.train_limit {
        train = train.truncated(n);
    }
    if let Some(n) = a.test_limit {
        test = test.truncated(n);
    }
    if train.is_empty() || test.is_empty() {
        return Err(CliError::Usage("training and test sets must be non-empty".into()).into());
    }
    if a.scaling == Scaling::Zscore {
        let (mean, std) = train.pixel_stats().expect("pixel data");
        let s = PixelScaling::ZScore { mean, std: if std > 0.0 { std } else { 1.0 } };
        train = train.with_scaling(s);
        test = test.with_scaling(s);
    }
    let dataset_id = a.dataset_id.clone().unwrap_or_else(|| dir_name(&a.data));
    let cfg = PopulationConfig {
        training,
        weight_seeds: (0..a.count as u64).map(|i| a.weight_seed_base + i).collect(),
        dataset_id,
    };
    let entries = generate_population(&cfg, &train, &test, &a.out)?;

    let mut rec = RunRecord::new("train", &a)?;
    rec.set("population", &cfg)?;
    for n in [TRAIN_IMAGES, TRAIN_LABELS, TEST_IMAGES, TEST_LABELS] {
        rec.input(file(n));
    }
    rec.output(a.out.join(neurotopo::trainer::MANIFEST_FILE));
    let (mut trained, mut reused) = (0, 0);
    for e in &entries {
        match e.status {
            Status::Trained => trained += 1,
            Status::Reused => reused += 1,
            Status::Failed => rec.fail(format!("seed {}: {}", e.seed, e.error.as_deref().unwrap_or("unknown error"))),
        }
        if e.status != Status::Failed {
            rec.output(a.out.join(&e.model_path));
        }
    }
    rec.write(&record_in_dir(&a.out, &a.record.run_json))?;
    println!(
        "{} networks: {trained} trained, {reused} reused, {} failed -> {}",
        entries.len(),
        rec.failures(),
        a.out.display()
    );
    if rec.failures() > 0 {
        return Err(CliError::Partial(format!("{} of {} networks failed", rec.failures(), entries.len())).into());
    }
    Ok(())
}

fn dir_name(p: &Path) -> String {
    p.canonicalize()
        .ok()
        .and_then(|c| c.file_name().map(|n| n.to_string_lossy().into_owned()))
        .unwrap_or_else(|| "dataset".into())
}

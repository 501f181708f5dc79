use std::path::PathBuf;

use clap::Args;
use neurotopo::trainer::{load_idx, Split, NUM_CLASSES};
use serde::Serialize;
use serde_json::json;

use crate::record::RunRecord;

#[derive(Args, Debug, Serialize)]
pub struct InspectArgs {
    #[arg(long)]
    pub images: PathBuf,
    #[arg(long)]
    pub labels: PathBuf,
    /// Also write a run record here.
    #[arg(long, value_name = "FILE")]
    pub run_json: Option<PathBuf>,
}

/// Prints `{"samples":N,"dim":784,"class_counts":[...]}`.
pub fn run(a: InspectArgs) -> anyhow::Result<()> {
    let ds = load_idx(&a.images, &a.labels, Split::Test)?;
    let mut counts = [0usize; NUM_CLASSES];
    for &l in ds.labels() {
        counts[l as usize] += 1;
    }
    println!("{}", json!({"samples": ds.len(), "dim": ds.dim(), "class_counts": counts}));
    if let Some(p) = &a.run_json {
        let mut rec = RunRecord::new("inspect", &a)?;
        rec.input(&a.images);
        rec.input(&a.labels);
        rec.write(p)?;
    }
    Ok(())
}

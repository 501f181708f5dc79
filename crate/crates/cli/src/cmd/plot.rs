use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, ValueEnum};
use neurotopo::bon::{accuracy_groups, Vocabulary};
use neurotopo::centrality::MeasureId;
use neurotopo::descriptors::{pearson_matrix, raw_columns, scatter_points};
use serde::Serialize;

use super::parse_measures;
use crate::population::load_population;
use crate::record::{record_beside, RunRecord};
use crate::{svg, CliError, RecordArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum What {
    /// Layer means of one measure for the two hidden layers, per network.
    Scatter,
    /// Mean type occurrence in the worst, median and top accuracy groups.
    Hist,
    /// Pearson correlation between measures over all hidden neurons.
    Corr,
}

#[derive(Args, Debug, Serialize)]
pub struct PlotArgs {
    #[arg(long, value_enum)]
    pub what: What,
    #[arg(long)]
    pub measures_csv: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Measure for `scatter`.
    #[arg(long, default_value = "s")]
    pub measure: String,
    /// Vocabulary for `hist`.
    #[arg(long)]
    pub vocab: Option<PathBuf>,
    /// Networks per accuracy group for `hist`.
    #[arg(long, default_value_t = 10)]
    pub group_size: usize,
    /// Measures for `corr`; defaults to every column of the CSV.
    #[arg(long)]
    pub measures: Option<String>,
    #[command(flatten)]
    #[serde(skip)]
    pub record: RecordArgs,
}

pub fn run(a: PlotArgs) -> anyhow::Result<()> {
    let mut rec = RunRecord::new("plot", &a)?;
    let mut warnings = Vec::new();
    let population = load_population(&a.measures_csv, &mut warnings)?;
    warnings.into_iter().for_each(|w| rec.warn(w));
    rec.input(&a.measures_csv);
    let mut w = csv::Writer::from_path(&a.out).with_context(|| format!("writing {}", a.out.display()))?;
    let picture = match a.what {
        What::Scatter => {
            let m: MeasureId = a.measure.parse().map_err(|e: neurotopo::Error| CliError::Usage(e.to_string()))?;
            let pts = scatter_points(&population, m)?;
            w.write_record(["network_id", "x", "y", "test_acc"])?;
            for p in &pts {
                w.write_record([p.network_id.clone(), p.x.to_string(), p.y.to_string(), p.test_acc.to_string()])?;
            }
            let xy: Vec<_> = pts.iter().map(|p| (p.x, p.y, p.test_acc)).collect();
            svg::scatter(&format!("layer means of {m}"), &format!("{m}, hidden layer 1"), &format!("{m}, hidden layer 2"), &xy)
        }
        What::Hist => {
            let path = a.vocab.as_ref().ok_or_else(|| CliError::Usage("--what hist needs --vocab".into()))?;
            let vocab = Vocabulary::load(path)?;
            rec.input(path);
            let accs: Vec<f64> = population.iter().map(|n| n.test_acc).collect();
            if accs.iter().any(|a| a.is_nan()) {
                return Err(CliError::Data("test accuracies missing from the networks sidecar".into()).into());
            }
            let groups = accuracy_groups(&accs, a.group_size)?;
            w.write_record(["group", "type", "mean", "std"])?;
            let mut series = Vec::new();
            for (name, idx) in [("worst", &groups.worst), ("median", &groups.median), ("top", &groups.top)] {
                let hists = idx
                    .iter()
                    .map(|&i| vocab.occurrence(&population[i].table).map(|h| h.frequencies))
                    .collect::<neurotopo::Result<Vec<_>>>()?;
                let n = hists.len() as f64;
                let mut means = Vec::with_capacity(vocab.k);
                for t in 0..vocab.k {
                    let mean = hists.iter().map(|h| h[t]).sum::<f64>() / n;
                    let std = (hists.iter().map(|h| (h[t] - mean).powi(2)).sum::<f64>() / n).sqrt();
                    w.write_record([name.to_string(), (t + 1).to_string(), mean.to_string(), std.to_string()])?;
                    means.push(mean);
                }
                series.push((name.to_string(), means));
            }
            let cats: Vec<String> = (1..=vocab.k).map(|t| format!("ψ{t}")).collect();
            svg::bars("neuron-type occurrence by accuracy group", &cats, &series)
        }
        What::Corr => {
            let measures = match &a.measures {
                Some(list) => parse_measures(list)?,
                None => population[0].table.measures.clone(),
            };
            let cols = raw_columns(&population, &measures);
            let corr = pearson_matrix(&measures, &cols);
            let mut header = vec!["measure".to_string()];
            header.extend(measures.iter().map(|m| m.name().to_string()));
            w.write_record(&header)?;
            for (m, row) in measures.iter().zip(&corr.values) {
                let mut r = vec![m.name().to_string()];
                r.extend(row.iter().map(|v| v.map_or("NaN".to_string(), |x| x.to_string())));
                w.write_record(&r)?;
            }
            let labels: Vec<String> = measures.iter().map(|m| m.name().to_string()).collect();
            svg::heatmap("Pearson correlation", &labels, &corr.values)
        }
    };
    w.flush()?;
    rec.output(&a.out);
    if let Some(p) = &a.svg {
        std::fs::write(p, picture).with_context(|| format!("writing {}", p.display()))?;
        rec.output(p);
    }
    rec.write(&record_beside(&a.out, &a.record.run_json))?;
    println!("{:?} data -> {}", a.what, a.out.display());
    Ok(())
}

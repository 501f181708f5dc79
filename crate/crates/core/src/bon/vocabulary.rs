use std::cmp::Ordering;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::divergence::jsd;
use super::kmeans::{kmeans, nearest, KMeansConfig, GENERATOR};
use crate::centrality::{MeasureId, MeasureTable};
use crate::descriptors::{FeatureMatrix, MeasuredNetwork};
use crate::error::{Error, Result};

/// A set of neuron types: k centroids in normalised descriptor space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vocabulary {
    pub measures: Vec<MeasureId>,
    pub normalizers: Vec<f64>,
    pub k: usize,
    /// Sorted ascending by strength, then by `bc`.
    pub centroids: Vec<Vec<f64>>,
    pub inertia: f64,
    pub seed: u64,
    pub generator: String,
    pub benchmark_id: String,
}

impl Vocabulary {
    /// Clusters the rows of `features` and sorts the centroids.
    pub fn fit(features: &FeatureMatrix, cfg: &KMeansConfig, benchmark_id: &str) -> Result<Vocabulary> {
        if cfg.k < 2 {
            return Err(Error::InvalidArgument(format!("vocabulary needs k >= 2, got {}", cfg.k)));
        }
        let fit = kmeans(&features.rows, cfg)?;
        let mut vocab = Vocabulary {
            measures: features.measures.clone(),
            normalizers: features.normalizers.clone(),
            k: cfg.k,
            centroids: fit.best.centroids,
            inertia: fit.best.inertia,
            seed: cfg.seed,
            generator: GENERATOR.to_string(),
            benchmark_id: benchmark_id.to_string(),
        };
        vocab.sort_centroids();
        Ok(vocab)
    }

    fn sort_key(&self) -> Vec<usize> {
        let mut key = Vec::new();
        for m in [MeasureId::S, MeasureId::Bc] {
            if let Some(c) = self.measures.iter().position(|&x| x == m) {
                key.push(c);
            }
        }
        let rest: Vec<usize> = (0..self.measures.len()).filter(|c| !key.contains(c)).collect();
        key.extend(rest);
        key
    }

    fn compare(&self, key: &[usize], a: &[f64], b: &[f64]) -> Ordering {
        key.iter()
            .map(|&c| a[c].total_cmp(&b[c]))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    fn sort_centroids(&mut self) {
        let key = self.sort_key();
        let mut c = std::mem::take(&mut self.centroids);
        c.sort_by(|a, b| self.compare(&key, a, b));
        self.centroids = c;
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.measures.len();
        if self.k < 2 || self.centroids.len() != self.k {
            return Err(Error::format("centroids", format!("expected k = {} >= 2 centroids, found {}", self.k, self.centroids.len())));
        }
        if self.normalizers.len() != m {
            return Err(Error::format("normalizers", format!("expected {m} values, found {}", self.normalizers.len())));
        }
        if let Some(i) = self.normalizers.iter().position(|n| !(n.is_finite() && *n > 0.0)) {
            return Err(Error::format("normalizers", format!("entry {i} is not a positive finite number")));
        }
        for (i, c) in self.centroids.iter().enumerate() {
            if c.len() != m || c.iter().any(|v| !v.is_finite()) {
                return Err(Error::format("centroids", format!("centroid {i} must hold {m} finite values")));
            }
        }
        let key = self.sort_key();
        if self.centroids.windows(2).any(|w| self.compare(&key, &w[0], &w[1]).is_gt()) {
            return Err(Error::format("centroids", "not sorted by strength"));
        }
        if !(self.inertia.is_finite() && self.inertia >= 0.0) {
            return Err(Error::format("inertia", "must be a nonnegative finite number"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Vocabulary> {
        let v: Vocabulary = serde_json::from_str(text)?;
        v.validate()?;
        Ok(v)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Vocabulary> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    /// Type of a descriptor given in raw units, measured with `measures`.
    pub fn assign(&self, measures: &[MeasureId], raw: &[f64]) -> Result<usize> {
        if measures != self.measures.as_slice() {
            return Err(Error::InvalidArgument(format!(
                "descriptor measures [{}] do not match vocabulary measures [{}]",
                join(measures),
                join(&self.measures)
            )));
        }
        if raw.len() != measures.len() {
            return Err(Error::InvalidArgument(format!(
                "descriptor has {} values for {} measures",
                raw.len(),
                measures.len()
            )));
        }
        Ok(self.assign_normalized(&self.normalize(raw)))
    }

    pub fn normalize(&self, raw: &[f64]) -> Vec<f64> {
        raw.iter().zip(&self.normalizers).map(|(v, n)| v / n).collect()
    }

    /// Nearest centroid; ties go to the smallest index.
    pub fn assign_normalized(&self, x: &[f64]) -> usize {
        nearest(x, &self.centroids).0
    }

    /// Share of the network's hidden neurons of each type. Neurons with an
    /// undefined measure are left out.
    pub fn occurrence(&self, table: &MeasureTable) -> Result<OccurrenceHistogram> {
        if let Some(m) = self.measures.iter().find(|m| table.column(**m).is_none()) {
            return Err(Error::InvalidArgument(format!(
                "network {} was not measured with {m}",
                table.network_id
            )));
        }
        let mut counts = vec![0usize; self.k];
        let mut excluded = 0;
        for i in 0..table.len() {
            match table.row(i, &self.measures) {
                Some(r) => counts[self.assign_normalized(&self.normalize(&r))] += 1,
                None => excluded += 1,
            }
        }
        let total: usize = counts.iter().sum();
        if total == 0 {
            return Err(Error::Numerical(format!(
                "network {}: every hidden neuron has an undefined descriptor",
                table.network_id
            )));
        }
        Ok(OccurrenceHistogram {
            frequencies: counts.iter().map(|&c| c as f64 / total as f64).collect(),
            counts,
            excluded,
        })
    }
}

fn join(m: &[MeasureId]) -> String {
    m.iter().map(|x| x.name()).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OccurrenceHistogram {
    pub frequencies: Vec<f64>,
    pub counts: Vec<usize>,
    /// Neurons skipped because a measure was undefined.
    pub excluded: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsdSummary {
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub per_network: Vec<f64>,
}

impl JsdSummary {
    pub fn from_values(per_network: Vec<f64>) -> Result<JsdSummary> {
        if per_network.is_empty() {
            return Err(Error::InvalidArgument("empty population".into()));
        }
        let n = per_network.len() as f64;
        let mean = per_network.iter().sum::<f64>() / n;
        let var = per_network.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        Ok(JsdSummary { mean, std: var.sqrt(), per_network })
    }
}

/// Per-network JSD between occurrences under `native` and under `source`.
pub fn cross_benchmark_jsd(
    source: &Vocabulary,
    native: &Vocabulary,
    population: &[MeasuredNetwork],
) -> Result<JsdSummary> {
    if source.measures != native.measures {
        return Err(Error::InvalidArgument(format!(
            "vocabularies use different measures: [{}] vs [{}]",
            join(&source.measures),
            join(&native.measures)
        )));
    }
    if source.k != native.k {
        return Err(Error::InvalidArgument(format!(
            "vocabularies have different sizes: {} vs {}",
            source.k, native.k
        )));
    }
    let values = population
        .iter()
        .map(|net| {
            let p = native.occurrence(&net.table)?;
            let q = source.occurrence(&net.table)?;
            jsd(&p.frequencies, &q.frequencies)
        })
        .collect::<Result<Vec<_>>>()?;
    JsdSummary::from_values(values)
}

/// Occurrence CSV: `network_id,test_acc,f1..fk`.
pub fn write_occurrence_csv<W: Write>(out: W, rows: &[(String, f64, OccurrenceHistogram)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let k = rows.first().map_or(0, |r| r.2.frequencies.len());
    let mut header = vec!["network_id".to_string(), "test_acc".to_string()];
    header.extend((1..=k).map(|i| format!("f{i}")));
    w.write_record(&header)?;
    for (id, acc, h) in rows {
        let mut rec = vec![id.clone(), acc.to_string()];
        rec.extend(h.frequencies.iter().map(|f| f.to_string()));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io("<occurrence csv>", e))?;
    Ok(())
}

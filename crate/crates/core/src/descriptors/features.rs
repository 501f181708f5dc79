use std::io::Write;

use serde::{Deserialize, Serialize};

use super::MeasuredNetwork;
use crate::centrality::{MeasureId, MeasureTable};
use crate::error::{Error, Result};

/// Measures of a single hidden neuron, aligned to a declared measure list.
#[derive(Debug, Clone, PartialEq)]
pub struct NeuronDescriptor {
    pub network_id: String,
    pub layer: usize,
    pub neuron: usize,
    pub values: Vec<f64>,
}

impl NeuronDescriptor {
    /// Descriptors of every fully defined neuron of `table`.
    pub fn from_table(table: &MeasureTable, measures: &[MeasureId]) -> Vec<Option<NeuronDescriptor>> {
        (0..table.len())
            .map(|i| {
                table.row(i, measures).map(|values| NeuronDescriptor {
                    network_id: table.network_id.clone(),
                    layer: table.layers[i],
                    neuron: table.neurons[i],
                    values,
                })
            })
            .collect()
    }
}

/// Stacked neuron descriptors of a population, each column scaled by its
/// largest absolute value.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub measures: Vec<MeasureId>,
    pub normalizers: Vec<f64>,
    /// Normalised rows, ordered by network, then layer, then neuron.
    pub rows: Vec<Vec<f64>>,
    /// `(network index, layer, neuron)` of every row.
    pub origin: Vec<(usize, usize, usize)>,
    /// Rows dropped because a value was undefined.
    pub excluded_rows: usize,
    pub warnings: Vec<String>,
}

/// JSON sidecar written next to an exported matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSidecar {
    pub measures: Vec<MeasureId>,
    pub normalizers: Vec<f64>,
    pub excluded_rows: usize,
}

impl FeatureMatrix {
    pub fn build(population: &[MeasuredNetwork], measures: &[MeasureId]) -> Result<Self> {
        if measures.is_empty() {
            return Err(Error::InvalidArgument("no measures selected".into()));
        }
        let shape = |t: &MeasureTable| {
            let layers = t.hidden_layers();
            layers
                .iter()
                .map(|&l| (l, t.layers.iter().filter(|&&x| x == l).count()))
                .collect::<Vec<_>>()
        };
        if let Some(first) = population.first() {
            let want = shape(&first.table);
            if let Some(bad) = population.iter().find(|n| shape(&n.table) != want) {
                return Err(Error::InvalidArgument(format!(
                    "network {} does not share the population architecture",
                    bad.table.network_id
                )));
            }
        }
        let mut rows = Vec::new();
        let mut origin = Vec::new();
        let mut excluded_rows = 0;
        for (k, net) in population.iter().enumerate() {
            let t = &net.table;
            let mut order: Vec<usize> = (0..t.len()).collect();
            order.sort_by_key(|&i| (t.layers[i], t.neurons[i]));
            for i in order {
                match t.row(i, measures) {
                    Some(r) => {
                        rows.push(r);
                        origin.push((k, t.layers[i], t.neurons[i]));
                    }
                    None => excluded_rows += 1,
                }
            }
        }
        let mut normalizers = Vec::with_capacity(measures.len());
        let mut warnings = Vec::new();
        for (c, m) in measures.iter().enumerate() {
            let max = rows.iter().map(|r: &Vec<f64>| r[c].abs()).fold(0.0, f64::max);
            if max > 0.0 {
                normalizers.push(max);
            } else {
                warnings.push(format!("column {m} is identically zero; left unscaled"));
                normalizers.push(1.0);
            }
        }
        for r in &mut rows {
            for (v, n) in r.iter_mut().zip(&normalizers) {
                *v /= n;
            }
        }
        Ok(FeatureMatrix {
            measures: measures.to_vec(),
            normalizers,
            rows,
            origin,
            excluded_rows,
            warnings,
        })
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Rows multiplied back by the stored normalizers.
    pub fn denormalized(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(&self.normalizers).map(|(v, n)| v * n).collect())
            .collect()
    }

    pub fn sidecar(&self) -> FeatureSidecar {
        FeatureSidecar {
            measures: self.measures.clone(),
            normalizers: self.normalizers.clone(),
            excluded_rows: self.excluded_rows,
        }
    }

    /// CSV with one header row naming the measures.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.measures.iter().map(|m| m.name()))?;
        for r in &self.rows {
            w.write_record(r.iter().map(|v| v.to_string()))?;
        }
        w.flush().map_err(|e| Error::io("<feature csv>", e))?;
        Ok(())
    }
}

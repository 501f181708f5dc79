//! Layer summaries, per-neuron descriptors and the population feature
//! matrix.

mod correlation;
mod features;
mod separability;

pub use correlation::{pearson_matrix, raw_columns, redundancy_filter, CorrelationMatrix, REDUNDANCY_THRESHOLD};
pub use features::{FeatureMatrix, FeatureSidecar, NeuronDescriptor};
pub use separability::{fisher_direction, loo_linear_accuracy};

use serde::{Deserialize, Serialize};

use crate::centrality::{MeasureId, MeasureTable};
use crate::error::{Error, Result};

/// Measures of one network together with its test accuracy.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredNetwork {
    pub table: MeasureTable,
    pub test_acc: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerMean {
    /// Mean over defined values; `None` when every value is undefined.
    pub mean: Option<f64>,
    /// Number of undefined values skipped.
    pub skipped: usize,
}

/// Arithmetic mean of the defined entries.
pub fn layer_mean(values: &[Option<f64>]) -> LayerMean {
    let defined: Vec<f64> = values.iter().flatten().copied().collect();
    let skipped = values.len() - defined.len();
    let mean = (!defined.is_empty()).then(|| defined.iter().sum::<f64>() / defined.len() as f64);
    LayerMean { mean, skipped }
}

/// A network placed by the layer means of one measure over its two hidden
/// layers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterPoint {
    pub network_id: String,
    pub x: f64,
    pub y: f64,
    pub test_acc: f64,
}

/// One point per network: `x` is the first hidden layer's mean of `measure`,
/// `y` the second's. Networks must have exactly two hidden layers.
pub fn scatter_points(population: &[MeasuredNetwork], measure: MeasureId) -> Result<Vec<ScatterPoint>> {
    population
        .iter()
        .map(|net| {
            let layers = net.table.hidden_layers();
            if layers.len() != 2 {
                return Err(Error::InvalidArgument(format!(
                    "network {} has {} hidden layers, scatter needs exactly 2",
                    net.table.network_id,
                    layers.len()
                )));
            }
            let mean_of = |layer| {
                let values = net.table.layer_values(measure, layer).ok_or_else(|| {
                    Error::InvalidArgument(format!("measure {measure} missing for {}", net.table.network_id))
                })?;
                layer_mean(&values).mean.ok_or_else(|| {
                    Error::Numerical(format!(
                        "layer {layer} of {} has no defined {measure} values",
                        net.table.network_id
                    ))
                })
            };
            Ok(ScatterPoint {
                network_id: net.table.network_id.clone(),
                x: mean_of(layers[0])?,
                y: mean_of(layers[1])?,
                test_acc: net.test_acc,
            })
        })
        .collect()
}

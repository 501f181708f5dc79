//! Bag-of-Neurons: a k-means vocabulary of neuron types, per-network type
//! occurrence and divergences between occurrence histograms.

mod divergence;
mod elbow;
mod groups;
mod kmeans;
mod vocabulary;

pub use divergence::{jsd, kld};
pub use elbow::{elbow_scan, knee, ElbowScan, LOW_CONFIDENCE_DISTANCE};
pub use groups::{accuracy_groups, AccuracyGroups};
pub use kmeans::{kmeans, single_run, KMeansConfig, KMeansFit, KMeansRun, GENERATOR};
pub use vocabulary::{cross_benchmark_jsd, write_occurrence_csv, JsdSummary, OccurrenceHistogram, Vocabulary};

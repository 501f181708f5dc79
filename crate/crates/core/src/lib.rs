//! Complex-network analysis of trained fully connected neural networks.
//!
//! A trained multilayer perceptron is read as a weighted, undirected,
//! layered-bipartite graph: every neuron is a node and every synapse an edge
//! carrying its signed weight. On top of that graph the crate provides
//!
//! - eight per-neuron centrality measures ([`centrality`]),
//! - layer summaries, per-neuron descriptors and the stacked feature matrix
//!   with a correlation-based redundancy filter ([`descriptors`]),
//! - a Bag-of-Neurons vocabulary (k-means++ with restarts, elbow selection,
//!   nearest-centroid typing, occurrence histograms and Jensen-Shannon
//!   divergence) ([`bon`]),
//! - a deterministic from-scratch trainer used to grow network populations
//!   ([`trainer`]).
//!
//! Everything is `f64` and deterministic given explicit seeds.

pub mod bon;
pub mod centrality;
pub mod descriptors;
pub mod error;
pub mod graph;
pub mod model;
pub mod trainer;

pub use error::{Error, Result};
pub use graph::{NeuronGraph, UGraph, GraphView, ViewMode};
pub use model::{LayeredNetwork, NetworkMeta};

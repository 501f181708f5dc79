//! Per-neuron centrality measures.
//!
//! Each measure is bound to one view of the neuron graph:
//!
//! | id    | measure                          | view                |
//! |-------|----------------------------------|---------------------|
//! | `s`   | strength                         | original weighted   |
//! | `snn` | average neighbour strength       | original weighted   |
//! | `so`  | second-order centrality          | positive unweighted |
//! | `sg`  | subgraph centrality              | positive unweighted |
//! | `mc`  | maximum-clique participation     | positive unweighted |
//! | `bc`  | bipartite local clustering       | positive unweighted |
//! | `hc`  | harmonic centrality              | positive weighted   |
//! | `cfc` | current-flow closeness           | original weighted   |
//!
//! `so` and `cfc` need a connected graph and run on the largest component of
//! their view; neurons outside it are reported undefined.

mod bipartite;
pub(crate) mod bitset;
mod cliques;
mod current_flow;
mod harmonic;
mod second_order;
mod strength;
mod table;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use bipartite::{bipartite_clustering, bipartite_clustering_of};
pub use cliques::{max_clique_counts, CliqueBudget, MaxCliques};
pub use current_flow::{
    current_flow_closeness, effective_resistance, laplacian, laplacian_pseudoinverse, ConductanceMode,
    Pseudoinverse, MAX_CONDITION, MAX_RELATIVE_ERROR,
};
pub use harmonic::{dijkstra, harmonic, harmonic_of};
pub use second_order::{balanced_transition, mean_first_passage, second_order, RADICAND_TOL};
pub use strength::{avg_neighbor_strength, strength, strengths};
pub use subgraph::{estrada_index, spectrum, subgraph_centrality, Spectrum};
pub use table::{read_measures_csv, write_measures_csv};

mod subgraph;

use crate::error::{Error, Result};
use crate::graph::{NeuronGraph, ViewMode};
use crate::model::LayeredNetwork;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureId {
    S,
    Snn,
    So,
    Sg,
    Mc,
    Bc,
    Hc,
    Cfc,
}

impl MeasureId {
    /// Canonical column order.
    pub const ALL: [MeasureId; 8] = [
        MeasureId::S,
        MeasureId::Snn,
        MeasureId::So,
        MeasureId::Sg,
        MeasureId::Mc,
        MeasureId::Bc,
        MeasureId::Hc,
        MeasureId::Cfc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureId::S => "s",
            MeasureId::Snn => "snn",
            MeasureId::So => "so",
            MeasureId::Sg => "sg",
            MeasureId::Mc => "mc",
            MeasureId::Bc => "bc",
            MeasureId::Hc => "hc",
            MeasureId::Cfc => "cfc",
        }
    }

    pub fn view(self) -> ViewMode {
        match self {
            MeasureId::S | MeasureId::Snn | MeasureId::Cfc => ViewMode::Original,
            MeasureId::Hc => ViewMode::PositiveWeighted,
            MeasureId::So | MeasureId::Sg | MeasureId::Mc | MeasureId::Bc => ViewMode::PositiveUnweighted,
        }
    }

    /// Relative computational cost, 1 = cheapest.
    pub fn cost_rank(self) -> u8 {
        match self {
            MeasureId::S => 1,
            MeasureId::Snn => 2,
            MeasureId::Bc => 3,
            MeasureId::Mc => 4,
            MeasureId::Hc => 5,
            MeasureId::So => 6,
            MeasureId::Sg => 7,
            MeasureId::Cfc => 8,
        }
    }

    /// Parses a comma-separated list; `all` expands to every measure.
    pub fn parse_list(list: &str) -> Result<Vec<MeasureId>> {
        if list.trim() == "all" {
            return Ok(MeasureId::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let id: MeasureId = part.parse()?;
            if !out.contains(&id) {
                out.push(id);
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidArgument("empty measure list".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeasureId::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let valid: Vec<_> = MeasureId::ALL.iter().map(|m| m.name()).collect();
                Error::InvalidArgument(format!("unknown measure {s:?}; valid ids: {}", valid.join(",")))
            })
    }
}

/// Values of one measure over the hidden neurons of one network; `None`
/// marks an undefined entry.
pub type MeasureVector = Vec<Option<f64>>;

/// Measures of every hidden neuron of one network.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureTable {
    pub network_id: String,
    /// Layer index of each row.
    pub layers: Vec<usize>,
    /// Position of each row within its layer.
    pub neurons: Vec<usize>,
    pub measures: Vec<MeasureId>,
    /// One column per entry of `measures`.
    pub columns: Vec<MeasureVector>,
}

impl MeasureTable {
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn column(&self, id: MeasureId) -> Option<&MeasureVector> {
        self.measures.iter().position(|&m| m == id).map(|k| &self.columns[k])
    }

    /// Values of `id` for the neurons of `layer`, in neuron order.
    pub fn layer_values(&self, id: MeasureId, layer: usize) -> Option<Vec<Option<f64>>> {
        let col = self.column(id)?;
        Some(
            self.layers
                .iter()
                .zip(col)
                .filter(|(&l, _)| l == layer)
                .map(|(_, &v)| v)
                .collect(),
        )
    }

    /// Distinct layers present, ascending.
    pub fn hidden_layers(&self) -> Vec<usize> {
        let mut l = self.layers.clone();
        l.sort_unstable();
        l.dedup();
        l
    }

    /// Row `i` restricted to `ids`, or `None` if any value is undefined or
    /// a measure is missing.
    pub fn row(&self, i: usize, ids: &[MeasureId]) -> Option<Vec<f64>> {
        ids.iter().map(|&id| self.column(id).and_then(|c| c[i])).collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MeasureConfig {
    pub clique_budget: CliqueBudget,
    pub cfc_mode: ConductanceMode,
}

/// Computes `measures` for every hidden neuron of `net`.
pub fn measure_all(net: &LayeredNetwork, measures: &[MeasureId], cfg: &MeasureConfig) -> Result<MeasureTable> {
    let graph = NeuronGraph::build(net);
    let hidden = graph.hidden_nodes();
    let columns = measures
        .par_iter()
        .map(|&m| measure_hidden(&graph, m, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasureTable {
        network_id: String::new(),
        layers: hidden.clone().map(|v| graph.layer_of(v)).collect(),
        neurons: hidden.clone().map(|v| v - graph.layer_nodes(graph.layer_of(v)).start).collect(),
        measures: measures.to_vec(),
        columns,
    })
}

fn measure_hidden(graph: &NeuronGraph, id: MeasureId, cfg: &MeasureConfig) -> Result<MeasureVector> {
    let hidden = graph.hidden_nodes();
    let view = graph.view(id.view());
    let g = &view.graph;
    let all_defined = |v: Vec<f64>| hidden.clone().map(|i| Some(v[i])).collect();
    Ok(match id {
        MeasureId::S => hidden.clone().map(|i| Some(strength(g, i))).collect(),
        MeasureId::Snn => hidden.clone().map(|i| avg_neighbor_strength(g, i)).collect(),
        MeasureId::Sg => all_defined(subgraph_centrality(g)?),
        MeasureId::Mc => {
            let mc = max_clique_counts(g, &cfg.clique_budget)?;
            hidden.clone().map(|i| Some(mc.per_node[i] as f64)).collect()
        }
        MeasureId::Bc => bipartite_clustering_of(g, hidden.clone()).into_iter().map(Some).collect(),
        MeasureId::Hc => harmonic_of(g, hidden.clone())?.into_iter().map(Some).collect(),
        MeasureId::So | MeasureId::Cfc => {
            let comp = view.largest_component();
            let mut full: Vec<Option<f64>> = vec![None; graph.node_count()];
            if comp.view.node_count() >= 2 {
                let values = if id == MeasureId::So {
                    second_order(&comp.view.graph)?.into_iter().map(Some).collect()
                } else {
                    current_flow_closeness(&comp.view.graph, cfg.cfc_mode)?
                };
                for (&orig, v) in comp.view.ids.iter().zip(values) {
                    full[orig] = v;
                }
            }
            hidden.clone().map(|i| full[i]).collect()
        }
    })
}

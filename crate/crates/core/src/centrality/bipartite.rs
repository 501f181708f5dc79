use super::bitset::{neighborhoods, BitSet};
use crate::graph::UGraph;

/// Bipartite local clustering of every node.
///
/// For node `i`, averages `|N(i) ∩ N(u)| / max(|N(i)|, |N(u)|)` over the
/// second neighbours `u` (neighbours of neighbours, `i` itself excluded).
/// Nodes without second neighbours get 0.
pub fn bipartite_clustering(g: &UGraph) -> Vec<f64> {
    let nbrs = neighborhoods(g);
    (0..g.node_count()).map(|i| clustering_at(&nbrs, i)).collect()
}

/// Same as [`bipartite_clustering`] restricted to the listed nodes.
pub fn bipartite_clustering_of(g: &UGraph, nodes: impl IntoIterator<Item = usize>) -> Vec<f64> {
    let nbrs = neighborhoods(g);
    nodes.into_iter().map(|i| clustering_at(&nbrs, i)).collect()
}

fn clustering_at(nbrs: &[BitSet], i: usize) -> f64 {
    let mut second = BitSet::new(nbrs.len());
    for j in nbrs[i].iter() {
        second.union_with(&nbrs[j]);
    }
    second.remove(i);
    let count = second.len();
    if count == 0 {
        return 0.0;
    }
    let ki = nbrs[i].len();
    let total: f64 = second
        .iter()
        .map(|u| {
            let shared = nbrs[i].intersection_len(&nbrs[u]);
            shared as f64 / ki.max(nbrs[u].len()) as f64
        })
        .sum();
    total / count as f64
}

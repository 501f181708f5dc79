use crate::graph::UGraph;

/// Weighted degree: signed sum of incident edge weights.
pub fn strength(g: &UGraph, node: usize) -> f64 {
    g.neighbors(node).iter().map(|&(_, w)| w).sum()
}

pub fn strengths(g: &UGraph) -> Vec<f64> {
    (0..g.node_count()).map(|i| strength(g, i)).collect()
}

/// Average neighbour strength `(1/s_i) * sum_j w_ij * s_j`.
///
/// Undefined (`None`) when the node's own strength is exactly zero.
pub fn avg_neighbor_strength(g: &UGraph, node: usize) -> Option<f64> {
    let s = strength(g, node);
    if s == 0.0 {
        return None;
    }
    let acc: f64 = g
        .neighbors(node)
        .iter()
        .filter(|&&(_, w)| w != 0.0)
        .map(|&(j, w)| w * strength(g, j))
        .sum();
    Some(acc / s)
}

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::UGraph;

/// Harmonic centrality `sum_{j != i} 1 / d(j, i)` with Dijkstra distances,
/// using each edge weight directly as its length. Unreachable nodes add 0.
pub fn harmonic(g: &UGraph, node: usize) -> Result<f64> {
    let dist = dijkstra(g, node)?;
    Ok(dist
        .iter()
        .enumerate()
        .filter(|&(j, d)| j != node && d.is_finite())
        .map(|(_, d)| 1.0 / d)
        .sum())
}

pub fn harmonic_of(g: &UGraph, nodes: impl IntoIterator<Item = usize>) -> Result<Vec<f64>> {
    nodes.into_iter().map(|i| harmonic(g, i)).collect()
}

/// Single-source shortest path lengths; `f64::INFINITY` when unreachable.
pub fn dijkstra(g: &UGraph, source: usize) -> Result<Vec<f64>> {
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(State { cost: 0.0, node: source });
    while let Some(State { cost, node }) = heap.pop() {
        if cost > dist[node] {
            continue;
        }
        for &(next, w) in g.neighbors(node) {
            if w.is_nan() || w <= 0.0 {
                return Err(Error::Structure(format!(
                    "non-positive edge length {w} between {node} and {next}"
                )));
            }
            let c = cost + w;
            if c < dist[next] {
                dist[next] = c;
                heap.push(State { cost: c, node: next });
            }
        }
    }
    Ok(dist)
}

#[derive(PartialEq)]
struct State {
    cost: f64,
    node: usize,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

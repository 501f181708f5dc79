//! Weighted undirected graphs, the neuron graph of a network, and the
//! thresholded views the centrality measures run on.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::model::LayeredNetwork;

/// Undirected weighted graph stored as sorted adjacency lists.
///
/// Every edge `(i, j, w)` appears in both `adj[i]` and `adj[j]`. Lists are
/// sorted by neighbour id, self-loops and parallel edges are rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct UGraph {
    adj: Vec<Vec<(usize, f64)>>,
}

impl UGraph {
    pub fn empty(n: usize) -> Self {
        UGraph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::Structure(format!("edge ({i}, {j}) out of range for {n} nodes")));
            }
            if i == j {
                return Err(Error::Structure(format!("self-loop at node {i}")));
            }
            if !w.is_finite() {
                return Err(Error::Structure(format!("edge ({i}, {j}) has non-finite weight")));
            }
            adj[i].push((j, w));
            adj[j].push((i, w));
        }
        for (i, list) in adj.iter_mut().enumerate() {
            list.sort_by_key(|&(j, _)| j);
            if list.windows(2).any(|p| p[0].0 == p[1].0) {
                return Err(Error::Structure(format!("parallel edges at node {i}")));
            }
        }
        Ok(UGraph { adj })
    }

    /// Builds from a symmetric matrix; zero entries are treated as absent.
    pub fn from_dense(a: &nalgebra::DMatrix<f64>) -> Result<Self> {
        let n = a.nrows();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if a[(i, j)] != a[(j, i)] {
                    return Err(Error::Structure(format!("matrix not symmetric at ({i}, {j})")));
                }
                if a[(i, j)] != 0.0 {
                    edges.push((i, j, a[(i, j)]));
                }
            }
        }
        UGraph::from_edges(n, &edges)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        let list = &self.adj[i];
        list.binary_search_by_key(&j, |&(k, _)| k).ok().map(|p| list[p].1)
    }

    /// Each edge once, with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&(j, _)| j > i).map(move |&(j, w)| (i, j, w)))
    }

    /// Dense adjacency matrix holding edge weights.
    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let n = self.node_count();
        let mut a = nalgebra::DMatrix::zeros(n, n);
        for (i, list) in self.adj.iter().enumerate() {
            for &(j, w) in list {
                a[(i, j)] = w;
            }
        }
        a
    }

    pub fn view(&self, mode: ViewMode) -> GraphView {
        let adj = self
            .adj
            .iter()
            .map(|list| match mode {
                ViewMode::Original => list.clone(),
                ViewMode::PositiveWeighted => list.iter().copied().filter(|&(_, w)| w > 0.0).collect(),
                ViewMode::PositiveUnweighted => list
                    .iter()
                    .filter(|&&(_, w)| w > 0.0)
                    .map(|&(j, _)| (j, 1.0))
                    .collect(),
            })
            .collect();
        GraphView {
            mode,
            graph: UGraph { adj },
            ids: (0..self.node_count()).collect(),
        }
    }

    /// Connected components, each sorted, listed in order of smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &(v, _) in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.components().len() == 1
    }

    /// Subgraph induced by `nodes` (sorted, distinct), relabelled `0..nodes.len()`.
    pub fn induced(&self, nodes: &[usize]) -> UGraph {
        let mut local = vec![usize::MAX; self.node_count()];
        for (k, &v) in nodes.iter().enumerate() {
            local[v] = k;
        }
        let adj = nodes
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&(u, _)| local[u] != usize::MAX)
                    .map(|&(u, w)| (local[u], w))
                    .collect()
            })
            .collect();
        UGraph { adj }
    }
}

/// Which edges a view keeps and what weight they carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViewMode {
    /// Every synapse with its signed weight.
    Original,
    /// Only synapses with weight strictly greater than zero.
    PositiveWeighted,
    /// Positive synapses, each with weight 1.
    PositiveUnweighted,
}

/// A filtered copy of a graph. `ids[k]` is the node id in the source graph
/// of local node `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphView {
    pub mode: ViewMode,
    pub graph: UGraph,
    pub ids: Vec<usize>,
}

/// Result of restricting a view to its largest connected component.
#[derive(Debug, Clone)]
pub struct Component {
    pub view: GraphView,
    /// Source-graph ids that were not kept.
    pub dropped: Vec<usize>,
    /// Set when the view had no edges and an arbitrary single node was kept.
    pub no_edges: bool,
}

impl GraphView {
    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    /// Largest connected component. Ties go to the component holding the
    /// smallest node id.
    pub fn largest_component(&self) -> Component {
        let comps = self.graph.components();
        let no_edges = self.graph.edge_count() == 0;
        let mut best: &[usize] = &[];
        for c in &comps {
            if c.len() > best.len() {
                best = c;
            }
        }
        let keep: Vec<usize> = best.to_vec();
        let mut kept = vec![false; self.node_count()];
        for &k in &keep {
            kept[k] = true;
        }
        let dropped = (0..self.node_count()).filter(|&k| !kept[k]).map(|k| self.ids[k]).collect();
        Component {
            view: GraphView {
                mode: self.mode,
                graph: self.graph.induced(&keep),
                ids: keep.iter().map(|&k| self.ids[k]).collect(),
            },
            dropped,
            no_edges,
        }
    }
}

/// All neurons of a network as one graph. Node ids run layer by layer:
/// layer `a` occupies `offsets[a]..offsets[a + 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NeuronGraph {
    pub graph: UGraph,
    layer_of: Vec<usize>,
    offsets: Vec<usize>,
}

impl NeuronGraph {
    /// One node per neuron (input and output included) and one edge per
    /// synapse carrying its signed weight.
    pub fn build(net: &LayeredNetwork) -> Self {
        let arch = net.arch();
        let mut offsets = Vec::with_capacity(arch.len() + 1);
        offsets.push(0);
        for &l in arch {
            offsets.push(offsets.last().unwrap() + l);
        }
        let n = *offsets.last().unwrap();
        let mut adj: Vec<Vec<(usize, f64)>> = Vec::with_capacity(n);
        let mut layer_of = Vec::with_capacity(n);
        for (a, &size) in arch.iter().enumerate() {
            for i in 0..size {
                let mut list = Vec::new();
                if a > 0 {
                    let w = &net.weights()[a - 1];
                    list.extend((0..arch[a - 1]).map(|p| (offsets[a - 1] + p, w[(p, i)])));
                }
                if a + 1 < arch.len() {
                    let w = &net.weights()[a];
                    list.extend((0..arch[a + 1]).map(|q| (offsets[a + 1] + q, w[(i, q)])));
                }
                adj.push(list);
                layer_of.push(a);
            }
        }
        NeuronGraph {
            graph: UGraph { adj },
            layer_of,
            offsets,
        }
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn layer_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn layer_of(&self, node: usize) -> usize {
        self.layer_of[node]
    }

    pub fn node_id(&self, layer: usize, index: usize) -> usize {
        self.offsets[layer] + index
    }

    pub fn layer_nodes(&self, layer: usize) -> std::ops::Range<usize> {
        self.offsets[layer]..self.offsets[layer + 1]
    }

    /// Node ids of every hidden neuron, in layer order.
    pub fn hidden_nodes(&self) -> std::ops::Range<usize> {
        self.offsets[1]..self.offsets[self.layer_count() - 1]
    }

    pub fn view(&self, mode: ViewMode) -> GraphView {
        self.graph.view(mode)
    }
}

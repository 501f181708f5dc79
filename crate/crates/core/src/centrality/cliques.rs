//! Participation counts in maximum cliques.
//!
//! Maximal cliques are enumerated depth-first with Tomita pivoting; branches
//! that cannot reach the current best size are pruned, so only cliques of
//! globally maximum cardinality are counted.

use std::time::{Duration, Instant};

use super::bitset::{neighborhoods, BitSet};
use crate::error::{Error, Result};
use crate::graph::UGraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliqueBudget {
    /// Maximal cliques that may be reported before giving up.
    pub max_cliques: u64,
    pub max_time: Duration,
}

impl Default for CliqueBudget {
    fn default() -> Self {
        CliqueBudget {
            max_cliques: 10_000_000,
            max_time: Duration::from_secs(300),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxCliques {
    /// Clique number of the graph.
    pub omega: usize,
    /// Number of maximum cliques.
    pub count: u64,
    /// Per node, how many maximum cliques contain it.
    pub per_node: Vec<u64>,
}

pub fn max_clique_counts(g: &UGraph, budget: &CliqueBudget) -> Result<MaxCliques> {
    let n = g.node_count();
    let mut search = Search {
        nbrs: neighborhoods(g),
        best: 0,
        count: 0,
        per_node: vec![0; n],
        reported: 0,
        calls: 0,
        budget: *budget,
        started: Instant::now(),
    };
    let mut r = Vec::new();
    search.expand(&mut r, BitSet::full(n), BitSet::new(n))?;
    Ok(MaxCliques {
        omega: search.best,
        count: search.count,
        per_node: search.per_node,
    })
}

struct Search {
    nbrs: Vec<BitSet>,
    best: usize,
    count: u64,
    per_node: Vec<u64>,
    reported: u64,
    calls: u64,
    budget: CliqueBudget,
    started: Instant,
}

impl Search {
    fn expand(&mut self, r: &mut Vec<usize>, mut p: BitSet, mut x: BitSet) -> Result<()> {
        self.calls += 1;
        if self.calls % 4096 == 0 && self.started.elapsed() > self.budget.max_time {
            return Err(Error::Budget(format!(
                "clique enumeration exceeded {:?}",
                self.budget.max_time
            )));
        }
        if p.is_empty() {
            if x.is_empty() {
                self.report(r)?;
            }
            return Ok(());
        }
        if r.len() + p.len() < self.best {
            return Ok(());
        }
        // Pivot maximising |P ∩ N(u)| over P ∪ X.
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| (p.intersection_len(&self.nbrs[u]), std::cmp::Reverse(u)))
            .expect("P is non-empty");
        let candidates: Vec<usize> = p.difference(&self.nbrs[pivot]).iter().collect();
        for v in candidates {
            r.push(v);
            let np = p.intersection(&self.nbrs[v]);
            let nx = x.intersection(&self.nbrs[v]);
            self.expand(r, np, nx)?;
            r.pop();
            p.remove(v);
            x.insert(v);
            if r.len() + p.len() < self.best {
                break;
            }
        }
        Ok(())
    }

    fn report(&mut self, clique: &[usize]) -> Result<()> {
        self.reported += 1;
        if self.reported > self.budget.max_cliques {
            return Err(Error::Budget(format!(
                "more than {} maximal cliques",
                self.budget.max_cliques
            )));
        }
        if clique.len() > self.best {
            self.best = clique.len();
            self.count = 0;
            self.per_node.iter_mut().for_each(|c| *c = 0);
        }
        if clique.len() == self.best {
            self.count += 1;
            for &v in clique {
                self.per_node[v] += 1;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n: usize, e: &[(usize, usize)]) -> MaxCliques {
        let edges: Vec<_> = e.iter().map(|&(i, j)| (i, j, 1.0)).collect();
        max_clique_counts(&UGraph::from_edges(n, &edges).unwrap(), &CliqueBudget::default()).unwrap()
    }

    #[test]
    fn triangle() {
        let m = run(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!((m.omega, m.count), (3, 1));
        assert_eq!(m.per_node, vec![1, 1, 1]);
    }

    #[test]
    fn bowtie() {
        let m = run(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        assert_eq!(m.per_node, vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn path_and_isolated() {
        let m = run(3, &[(0, 1), (1, 2)]);
        assert_eq!((m.omega, m.count), (2, 2));
        assert_eq!(m.per_node, vec![1, 2, 1]);

        let m = run(3, &[]);
        assert_eq!((m.omega, m.count), (1, 3));
        assert_eq!(m.per_node, vec![1, 1, 1]);

        let m = run(4, &[(0, 1)]);
        assert_eq!(m.per_node, vec![1, 1, 0, 0]);
    }

    #[test]
    fn budget_is_enforced() {
        let edges: Vec<_> = (0..10).map(|i| (i, i + 10, 1.0)).collect();
        let g = UGraph::from_edges(20, &edges).unwrap();
        let budget = CliqueBudget {
            max_cliques: 3,
            ..CliqueBudget::default()
        };
        assert!(matches!(max_clique_counts(&g, &budget), Err(Error::Budget(_))));
    }
}

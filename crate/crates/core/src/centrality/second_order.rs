//! Second-order centrality: standard deviation of the return times of a
//! perpetual random walk.
//!
//! The walk is degree-balanced: every node receives a self-loop of weight
//! `d_max - d_i`, so the transition matrix is doubly stochastic and the
//! stationary distribution uniform. Under that walk the return-time variance
//! of node `i` is `2 * sum_j M(j, i) - n(n + 1)` where `M(j, i)` is the mean
//! first-passage time from `j` to `i` and `M(i, i) = n` the mean return time.
//! `M` comes from the fundamental matrix `Z = (I - P + 1 pi^T)^-1`:
//! `M(j, i) = (Z_ii - Z_ji) / pi_i` for `j != i`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::UGraph;

/// Radicands in `[-RADICAND_TOL, 0)` are clamped to zero.
pub const RADICAND_TOL: f64 = 1e-9;

/// Transition matrix of the degree-balanced walk.
pub fn balanced_transition(g: &UGraph) -> Result<DMatrix<f64>> {
    let n = g.node_count();
    let mut p = DMatrix::zeros(n, n);
    let mut deg = vec![0.0; n];
    for i in 0..n {
        for &(j, w) in g.neighbors(i) {
            if w < 0.0 {
                return Err(Error::Structure(format!("negative edge weight at ({i}, {j})")));
            }
            p[(i, j)] = w;
            deg[i] += w;
        }
    }
    let dmax = deg.iter().copied().fold(0.0, f64::max);
    if dmax <= 0.0 {
        return Err(Error::Structure("graph has no edges".into()));
    }
    for i in 0..n {
        p[(i, i)] += dmax - deg[i];
    }
    Ok(p / dmax)
}

/// Mean first-passage matrix of the balanced walk; `M(j, i)` is the expected
/// number of steps from `j` until the first visit of `i` (return time on the
/// diagonal).
pub fn mean_first_passage(g: &UGraph) -> Result<DMatrix<f64>> {
    let n = g.node_count();
    let p = balanced_transition(g)?;
    let nf = n as f64;
    let mut a = DMatrix::identity(n, n) - p;
    a.add_scalar_mut(1.0 / nf);
    let z = a
        .try_inverse()
        .ok_or_else(|| Error::Numerical("fundamental matrix is singular".into()))?;
    Ok(DMatrix::from_fn(n, n, |j, i| {
        if i == j {
            nf
        } else {
            (z[(i, i)] - z[(j, i)]) * nf
        }
    }))
}

/// Second-order centrality of every node of a connected graph.
pub fn second_order(g: &UGraph) -> Result<Vec<f64>> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::InvalidArgument("second-order centrality needs at least 2 nodes".into()));
    }
    let comps = g.components().len();
    if comps != 1 {
        return Err(Error::Disconnected { components: comps });
    }
    let m = mean_first_passage(g)?;
    let nf = n as f64;
    (0..n)
        .map(|i| {
            let radicand = 2.0 * m.column(i).sum() - nf * (nf + 1.0);
            if radicand >= 0.0 {
                Ok(radicand.sqrt())
            } else if radicand >= -RADICAND_TOL {
                Ok(0.0)
            } else {
                Err(Error::Numerical(format!("negative radicand {radicand} at node {i}")))
            }
        })
        .collect()
}

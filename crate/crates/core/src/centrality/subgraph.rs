//! Subgraph centrality from the spectral decomposition of the adjacency
//! matrix: `sg(i) = sum_j u_j(i)^2 * exp(lambda_j)`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::UGraph;

pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
}

pub fn spectrum(g: &UGraph) -> Result<Spectrum> {
    let a = g.to_dense();
    let n = a.nrows();
    let eig = SymmetricEigen::try_new(a, f64::EPSILON, 1000 * n.max(1))
        .ok_or_else(|| Error::Numerical("symmetric eigendecomposition did not converge".into()))?;
    Ok(Spectrum {
        eigenvalues: eig.eigenvalues.iter().copied().collect(),
        eigenvectors: eig.eigenvectors,
    })
}

/// Subgraph centrality of every node, using the graph's edge weights as
/// adjacency entries (pass a positive-unweighted view for the 0/1 form).
pub fn subgraph_centrality(g: &UGraph) -> Result<Vec<f64>> {
    let sp = spectrum(g)?;
    let exps: Vec<f64> = sp.eigenvalues.iter().map(|l| l.exp()).collect();
    if exps.iter().any(|e| !e.is_finite()) {
        return Err(Error::Numerical("exp(lambda) overflows".into()));
    }
    let u = &sp.eigenvectors;
    Ok((0..g.node_count())
        .map(|i| (0..exps.len()).map(|j| u[(i, j)] * u[(i, j)] * exps[j]).sum())
        .collect())
}

/// Trace of `exp(A)`.
pub fn estrada_index(g: &UGraph) -> Result<f64> {
    Ok(spectrum(g)?.eigenvalues.iter().map(|l| l.exp()).sum())
}

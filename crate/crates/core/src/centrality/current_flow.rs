//! Current-flow closeness from the Laplacian pseudoinverse.
//!
//! Edges are conductances. For a connected graph the pseudoinverse is
//! `(L + J/n)^-1 - J/n`; the effective resistance between `i` and `j` is
//! `L+_ii + L+_jj - 2 L+_ij`, and `CF(i) = (n - 1) / sum_j r_eff(i, j)`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::UGraph;

/// 1-norm condition estimate above which results are reported undefined.
pub const MAX_CONDITION: f64 = 1e10;

/// Largest estimated relative error of a reported closeness value. The
/// estimate is `eps * condition * sum|r| / |sum r|`: signed conductances can
/// make the resistance sum cancel, which amplifies rounding in `L+`.
pub const MAX_RELATIVE_ERROR: f64 = 1e-11;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConductanceMode {
    /// Signed weights used as-is; the Laplacian may be indefinite.
    #[default]
    Raw,
    /// Absolute weights, giving a positive semidefinite Laplacian.
    Absolute,
}

pub fn laplacian(g: &UGraph, mode: ConductanceMode) -> DMatrix<f64> {
    let n = g.node_count();
    let mut l = DMatrix::zeros(n, n);
    for i in 0..n {
        for &(j, w) in g.neighbors(i) {
            let c = match mode {
                ConductanceMode::Raw => w,
                ConductanceMode::Absolute => w.abs(),
            };
            l[(i, j)] -= c;
            l[(i, i)] += c;
        }
    }
    l
}

/// Laplacian pseudoinverse together with a condition estimate of the
/// regularised system.
pub struct Pseudoinverse {
    pub matrix: DMatrix<f64>,
    pub condition: f64,
}

pub fn laplacian_pseudoinverse(g: &UGraph, mode: ConductanceMode) -> Result<Pseudoinverse> {
    let n = g.node_count();
    let comps = g.components().len();
    if comps != 1 {
        return Err(Error::Disconnected { components: comps });
    }
    let mut reg = laplacian(g, mode);
    let j = 1.0 / n as f64;
    reg.add_scalar_mut(j);
    let norm = one_norm(&reg);
    let mut inv = reg.try_inverse().ok_or_else(|| {
        Error::Numerical(format!(
            "Laplacian is singular beyond its constant null vector (conductance mode {mode:?}; \
             signed weights can cancel, try absolute mode)"
        ))
    })?;
    let condition = norm * one_norm(&inv);
    inv.add_scalar_mut(-j);
    Ok(Pseudoinverse { matrix: inv, condition })
}

fn one_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Pairwise effective resistances of a connected graph.
pub fn effective_resistance(g: &UGraph, mode: ConductanceMode) -> Result<DMatrix<f64>> {
    let p = laplacian_pseudoinverse(g, mode)?.matrix;
    let n = p.nrows();
    Ok(DMatrix::from_fn(n, n, |i, j| p[(i, i)] + p[(j, j)] - 2.0 * p[(i, j)]))
}

/// Current-flow closeness of every node. Entries are `None` when the
/// system is ill-conditioned, the resistance sum is zero or non-finite, or
/// cancellation in that sum leaves too few reliable digits.
pub fn current_flow_closeness(g: &UGraph, mode: ConductanceMode) -> Result<Vec<Option<f64>>> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::InvalidArgument("current-flow closeness needs at least 2 nodes".into()));
    }
    let pinv = laplacian_pseudoinverse(g, mode)?;
    if !(pinv.condition.is_finite() && pinv.condition <= MAX_CONDITION) {
        return Ok(vec![None; n]);
    }
    let p = &pinv.matrix;
    Ok((0..n)
        .map(|i| {
            let (total, magnitude) = (0..n)
                .map(|j| p[(i, i)] + p[(j, j)] - 2.0 * p[(i, j)])
                .fold((0.0, 0.0), |(t, m), r| (t + r, m + r.abs()));
            let cf = (n - 1) as f64 / total;
            let error = f64::EPSILON * pinv.condition * magnitude / total.abs();
            (total != 0.0 && cf.is_finite() && error <= MAX_RELATIVE_ERROR).then_some(cf)
        })
        .collect())
}

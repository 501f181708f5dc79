//! Lloyd's k-means with k-means++ seeding and best-of-restarts selection.
//!
//! Each restart draws from its own ChaCha8 stream (`seed`, stream = restart
//! index), so restarts can run in parallel and the winner is the same as a
//! sequential scan: lowest inertia, ties to the lowest restart index.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Identifier serialised with every vocabulary.
pub const GENERATOR: &str = "chacha8-stream-per-restart";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KMeansConfig {
    pub k: usize,
    pub restarts: usize,
    /// Convergence when `||C_new - C_old||_F < rel_tol * ||C_old||_F`.
    pub rel_tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl KMeansConfig {
    pub fn new(k: usize, seed: u64) -> Self {
        KMeansConfig {
            k,
            restarts: 100,
            rel_tol: 1e-3,
            max_iter: 300,
            seed,
        }
    }
}

/// Outcome of one restart.
#[derive(Debug, Clone, PartialEq)]
pub struct KMeansRun {
    pub centroids: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub inertia: f64,
    /// Inertia after every assignment step, ending with the final value.
    pub inertia_trace: Vec<f64>,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansFit {
    pub best: KMeansRun,
    pub best_restart: usize,
    /// Final inertia of every restart.
    pub restart_inertias: Vec<f64>,
}

pub fn kmeans(rows: &[Vec<f64>], cfg: &KMeansConfig) -> Result<KMeansFit> {
    validate(rows, cfg)?;
    let runs: Vec<KMeansRun> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| single_run(rows, cfg, r as u64))
        .collect();
    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.inertia < runs[best].inertia {
            best = i;
        }
    }
    let restart_inertias = runs.iter().map(|r| r.inertia).collect();
    Ok(KMeansFit {
        best: runs.into_iter().nth(best).expect("restarts >= 1"),
        best_restart: best,
        restart_inertias,
    })
}

fn validate(rows: &[Vec<f64>], cfg: &KMeansConfig) -> Result<()> {
    if cfg.k == 0 || cfg.restarts == 0 || cfg.max_iter == 0 {
        return Err(Error::InvalidArgument("k, restarts and max_iter must be positive".into()));
    }
    if cfg.k > rows.len() {
        return Err(Error::InvalidArgument(format!("k = {} exceeds {} rows", cfg.k, rows.len())));
    }
    let dim = rows[0].len();
    if rows.iter().any(|r| r.len() != dim) {
        return Err(Error::InvalidArgument("rows have different lengths".into()));
    }
    if rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite value in k-means input".into()));
    }
    Ok(())
}

/// One seeded restart: k-means++ seeding followed by Lloyd iterations.
pub fn single_run(rows: &[Vec<f64>], cfg: &KMeansConfig, restart: u64) -> KMeansRun {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart);
    let mut centroids = kmeans_pp(rows, cfg.k, &mut rng);
    let mut trace = Vec::new();
    let mut iterations = 0;
    loop {
        let (mut labels, inertia) = assign_all(rows, &centroids);
        trace.push(inertia);
        if iterations == cfg.max_iter {
            return KMeansRun {
                centroids,
                labels,
                inertia,
                inertia_trace: trace,
                iterations,
            };
        }
        iterations += 1;
        let updated = update(rows, &mut labels, cfg.k, &centroids);
        let shift = frobenius_diff(&updated, &centroids);
        let base = frobenius_diff(&centroids, &vec![vec![0.0; rows[0].len()]; cfg.k]);
        centroids = updated;
        if shift == 0.0 || shift < cfg.rel_tol * base {
            let (labels, inertia) = assign_all(rows, &centroids);
            trace.push(inertia);
            return KMeansRun {
                centroids,
                labels,
                inertia,
                inertia_trace: trace,
                iterations,
            };
        }
    }
}

fn kmeans_pp(rows: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = rows.len();
    let mut centroids = vec![rows[rng.random_range(0..n)].clone()];
    let mut d2: Vec<f64> = rows.iter().map(|r| sq_dist(r, &centroids[0])).collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut idx = n - 1;
            for (i, &d) in d2.iter().enumerate() {
                if d > 0.0 && target < d {
                    idx = i;
                    break;
                }
                target -= d;
            }
            // Guard against rounding walking past the last positive weight.
            if d2[idx] == 0.0 {
                idx = d2.iter().rposition(|&d| d > 0.0).unwrap_or(idx);
            }
            idx
        } else {
            rng.random_range(0..n)
        };
        let c = rows[pick].clone();
        for (d, r) in d2.iter_mut().zip(rows) {
            *d = d.min(sq_dist(r, &c));
        }
        centroids.push(c);
    }
    centroids
}

/// Nearest centroid per row (ties to the lowest index) and the inertia.
pub(crate) fn assign_all(rows: &[Vec<f64>], centroids: &[Vec<f64>]) -> (Vec<usize>, f64) {
    let mut inertia = 0.0;
    let labels = rows
        .iter()
        .map(|r| {
            let (c, d) = nearest(r, centroids);
            inertia += d;
            c
        })
        .collect();
    (labels, inertia)
}

pub(crate) fn nearest(x: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, cent) in centroids.iter().enumerate() {
        let d = sq_dist(x, cent);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

/// Cluster means. An empty cluster takes the point farthest from its
/// current centroid; that point is relabelled so later reseeds see it.
fn update(rows: &[Vec<f64>], labels: &mut [usize], k: usize, old: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let dim = rows[0].len();
    let mut sums = vec![vec![0.0; dim]; k];
    let mut counts = vec![0usize; k];
    for (r, &l) in rows.iter().zip(labels.iter()) {
        counts[l] += 1;
        // Offsets from the old centroid keep exact means for repeated points.
        for ((s, v), o) in sums[l].iter_mut().zip(r).zip(&old[l]) {
            *s += v - o;
        }
    }
    let mut centroids: Vec<Vec<f64>> = sums
        .into_iter()
        .zip(&counts)
        .zip(old)
        .map(|((s, &n), o)| {
            if n == 0 {
                o.clone()
            } else {
                s.into_iter().zip(o).map(|(v, c)| c + v / n as f64).collect()
            }
        })
        .collect();
    let mut moved = vec![false; rows.len()];
    for c in 0..k {
        if counts[c] > 0 {
            continue;
        }
        let far = (0..rows.len())
            .filter(|&i| !moved[i] && counts[labels[i]] > 1)
            .map(|i| (i, sq_dist(&rows[i], &centroids[labels[i]])))
            .fold(None::<(usize, f64)>, |acc, (i, d)| match acc {
                Some((_, bd)) if bd >= d => acc,
                _ => Some((i, d)),
            });
        if let Some((i, _)) = far {
            moved[i] = true;
            counts[labels[i]] -= 1;
            labels[i] = c;
            counts[c] = 1;
            centroids[c] = rows[i].clone();
        }
    }
    centroids
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn frobenius_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter().zip(b).map(|(x, y)| sq_dist(x, y)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_clouds() -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut rows = Vec::new();
        for i in 0..100 {
            let c = if i % 2 == 0 { 0.0 } else { 1.0 };
            rows.push(vec![c + 0.01 * (rng.random::<f64>() - 0.5), 0.01 * (rng.random::<f64>() - 0.5)]);
        }
        rows
    }

    #[test]
    fn recovers_two_clouds() {
        let fit = kmeans(&two_clouds(), &KMeansConfig::new(2, 3)).unwrap();
        let mut xs: Vec<f64> = fit.best.centroids.iter().map(|c| c[0]).collect();
        xs.sort_by(f64::total_cmp);
        assert!(xs[0].abs() < 0.05 && (xs[1] - 1.0).abs() < 0.05, "{xs:?}");
    }

    #[test]
    fn k_equals_rows() {
        let rows = vec![vec![0.0], vec![1.0], vec![5.0], vec![9.0]];
        let fit = kmeans(&rows, &KMeansConfig::new(4, 0)).unwrap();
        assert_eq!(fit.best.inertia, 0.0);
    }

    #[test]
    fn identical_points() {
        let rows = vec![vec![0.3, 0.3]; 10];
        let fit = kmeans(&rows, &KMeansConfig::new(2, 0)).unwrap();
        assert_eq!(fit.best.inertia, 0.0);
        assert!(fit.best.centroids.iter().all(|c| c == &vec![0.3, 0.3]));
    }

    #[test]
    fn trace_never_increases_and_best_is_min() {
        let rows = two_clouds();
        let cfg = KMeansConfig { restarts: 8, ..KMeansConfig::new(5, 11) };
        let fit = kmeans(&rows, &cfg).unwrap();
        for r in 0..8 {
            let run = single_run(&rows, &cfg, r);
            for w in run.inertia_trace.windows(2) {
                assert!(w[1] <= w[0] * (1.0 + 1e-12), "{:?}", run.inertia_trace);
            }
            assert!(fit.best.inertia <= run.inertia);
            assert_eq!(fit.restart_inertias[r as usize], run.inertia);
        }
    }

    #[test]
    fn errors() {
        let rows = vec![vec![0.0], vec![1.0]];
        assert!(kmeans(&rows, &KMeansConfig::new(3, 0)).is_err());
        assert!(kmeans(&[vec![f64::NAN], vec![0.0]], &KMeansConfig::new(1, 0)).is_err());
    }

    #[test]
    fn deterministic() {
        let rows = two_clouds();
        let cfg = KMeansConfig { restarts: 5, ..KMeansConfig::new(3, 9) };
        assert_eq!(kmeans(&rows, &cfg).unwrap(), kmeans(&rows, &cfg).unwrap());
    }
}

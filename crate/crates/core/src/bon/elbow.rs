use serde::{Deserialize, Serialize};

use super::kmeans::{kmeans, KMeansConfig};
use crate::error::{Error, Result};

/// Knees closer than this to the chord (in unit-normalised coordinates) are
/// reported as low confidence.
pub const LOW_CONFIDENCE_DISTANCE: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElbowScan {
    pub ks: Vec<usize>,
    pub inertias: Vec<f64>,
    /// Perpendicular distance of every point from the end-to-end chord, with
    /// both axes scaled to `[0, 1]`.
    pub chord_distances: Vec<f64>,
    pub best_k: usize,
    pub low_confidence: bool,
}

/// Runs k-means for every `k` in `kmin..=kmax` and picks the knee.
pub fn elbow_scan(rows: &[Vec<f64>], kmin: usize, kmax: usize, base: &KMeansConfig) -> Result<ElbowScan> {
    if kmin < 1 || kmin >= kmax {
        return Err(Error::InvalidArgument(format!("need 1 <= kmin < kmax, got {kmin}..{kmax}")));
    }
    if kmax > rows.len() {
        return Err(Error::InvalidArgument(format!("kmax = {kmax} exceeds {} rows", rows.len())));
    }
    let ks: Vec<usize> = (kmin..=kmax).collect();
    let inertias = ks
        .iter()
        .map(|&k| kmeans(rows, &KMeansConfig { k, ..*base }).map(|f| f.best.inertia))
        .collect::<Result<Vec<_>>>()?;
    Ok(knee(ks, inertias))
}

/// Knee of a distortion curve by maximum distance from the chord.
pub fn knee(ks: Vec<usize>, inertias: Vec<f64>) -> ElbowScan {
    let (k0, k1) = (ks[0] as f64, *ks.last().unwrap() as f64);
    let lo = inertias.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = inertias.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    let pts: Vec<(f64, f64)> = ks
        .iter()
        .zip(&inertias)
        .map(|(&k, &i)| {
            let y = if span > 0.0 { (i - lo) / span } else { 0.0 };
            ((k as f64 - k0) / (k1 - k0), y)
        })
        .collect();
    let (a, b) = (pts[0], *pts.last().unwrap());
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len = (dx * dx + dy * dy).sqrt();
    let chord_distances: Vec<f64> = pts
        .iter()
        .map(|p| ((p.0 - a.0) * dy - (p.1 - a.1) * dx).abs() / len)
        .collect();
    let mut best = 0;
    for (i, &d) in chord_distances.iter().enumerate() {
        if d > chord_distances[best] {
            best = i;
        }
    }
    ElbowScan {
        best_k: ks[best],
        low_confidence: chord_distances[best] < LOW_CONFIDENCE_DISTANCE,
        ks,
        inertias,
        chord_distances,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharp_knee() {
        let scan = knee(vec![2, 3, 4, 5, 6], vec![100.0, 10.0, 9.0, 8.0, 7.0]);
        assert_eq!(scan.best_k, 3);
        assert!(!scan.low_confidence);
    }

    #[test]
    fn straight_line_is_low_confidence() {
        let ks: Vec<usize> = (2..=18).collect();
        let inertias = ks.iter().map(|&k| 100.0 - 5.0 * k as f64).collect();
        let scan = knee(ks, inertias);
        assert!(scan.low_confidence);
        assert!(scan.chord_distances.iter().all(|d| *d < 1e-12));
    }

    #[test]
    fn argument_checks() {
        let rows = vec![vec![0.0]; 4];
        assert!(elbow_scan(&rows, 2, 5, &KMeansConfig::new(2, 0)).is_err());
        assert!(elbow_scan(&rows, 3, 3, &KMeansConfig::new(2, 0)).is_err());
    }
}

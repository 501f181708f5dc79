use nalgebra::{DMatrix, DVector};

/// Fisher discriminant direction and threshold for two labelled point sets.
///
/// Returns `(w, b)` such that `w . x > b` predicts the positive class. The
/// within-class scatter gets a tiny ridge so degenerate clouds still solve.
pub fn fisher_direction(points: &[Vec<f64>], labels: &[bool]) -> Option<(DVector<f64>, f64)> {
    let d = points.first()?.len();
    let class = |want: bool| -> Vec<DVector<f64>> {
        points
            .iter()
            .zip(labels)
            .filter(|(_, &l)| l == want)
            .map(|(p, _)| DVector::from_column_slice(p))
            .collect()
    };
    let (pos, neg) = (class(true), class(false));
    if pos.is_empty() || neg.is_empty() {
        return None;
    }
    let mean = |xs: &[DVector<f64>]| xs.iter().fold(DVector::zeros(d), |a, x| a + x) / xs.len() as f64;
    let (mp, mn) = (mean(&pos), mean(&neg));
    let mut sw = DMatrix::zeros(d, d);
    for (xs, m) in [(&pos, &mp), (&neg, &mn)] {
        for x in xs.iter() {
            let c = x - m;
            sw += &c * c.transpose();
        }
    }
    let ridge = 1e-9 * (sw.trace() / d as f64).max(1e-300);
    for i in 0..d {
        sw[(i, i)] += ridge;
    }
    let w = sw.lu().solve(&(&mp - &mn))?;
    let b = w.dot(&((&mp + &mn) / 2.0));
    Some((w, b))
}

/// Leave-one-out accuracy of a Fisher linear discriminant.
pub fn loo_linear_accuracy(points: &[Vec<f64>], labels: &[bool]) -> f64 {
    assert_eq!(points.len(), labels.len());
    if points.is_empty() {
        return 0.0;
    }
    let mut correct = 0;
    for k in 0..points.len() {
        let (tp, tl): (Vec<Vec<f64>>, Vec<bool>) = points
            .iter()
            .zip(labels)
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, (p, &l))| (p.clone(), l))
            .unzip();
        if let Some((w, b)) = fisher_direction(&tp, &tl) {
            let x = DVector::from_column_slice(&points[k]);
            if (w.dot(&x) > b) == labels[k] {
                correct += 1;
            }
        }
    }
    correct as f64 / points.len() as f64
}

use super::MeasuredNetwork;
use crate::centrality::MeasureId;

/// Pairs with `|rho|` strictly above this are considered redundant.
pub const REDUNDANCY_THRESHOLD: f64 = 0.8;

/// Symmetric Pearson correlation matrix; `None` where a column is constant.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub measures: Vec<MeasureId>,
    pub values: Vec<Vec<Option<f64>>>,
}

impl CorrelationMatrix {
    pub fn get(&self, a: MeasureId, b: MeasureId) -> Option<f64> {
        let i = self.measures.iter().position(|&m| m == a)?;
        let j = self.measures.iter().position(|&m| m == b)?;
        self.values[i][j]
    }
}

/// Raw (unnormalised) columns of the fully defined neurons of a population.
pub fn raw_columns(population: &[MeasuredNetwork], measures: &[MeasureId]) -> Vec<Vec<f64>> {
    let mut cols = vec![Vec::new(); measures.len()];
    for net in population {
        for i in 0..net.table.len() {
            if let Some(r) = net.table.row(i, measures) {
                for (c, v) in cols.iter_mut().zip(r) {
                    c.push(v);
                }
            }
        }
    }
    cols
}

/// Pearson correlation between every pair of columns.
pub fn pearson_matrix(measures: &[MeasureId], columns: &[Vec<f64>]) -> CorrelationMatrix {
    assert_eq!(measures.len(), columns.len(), "one column per measure");
    let centered: Vec<Option<(Vec<f64>, f64)>> = columns
        .iter()
        .map(|c| {
            if c.len() < 2 {
                return None;
            }
            let mean = c.iter().sum::<f64>() / c.len() as f64;
            let dev: Vec<f64> = c.iter().map(|v| v - mean).collect();
            let norm = dev.iter().map(|d| d * d).sum::<f64>().sqrt();
            (norm > 0.0).then_some((dev, norm))
        })
        .collect();
    let m = columns.len();
    let mut values = vec![vec![None; m]; m];
    for i in 0..m {
        for j in i..m {
            let (Some((a, na)), Some((b, nb))) = (&centered[i], &centered[j]) else {
                continue;
            };
            let rho = if i == j {
                1.0
            } else {
                let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                (dot / (na * nb)).clamp(-1.0, 1.0)
            };
            values[i][j] = Some(rho);
            values[j][i] = Some(rho);
        }
    }
    CorrelationMatrix {
        measures: measures.to_vec(),
        values,
    }
}

/// Drops redundant measures: pairs with `|rho| > threshold` are visited in
/// descending `|rho|` and the more expensive member of each pair is removed,
/// unless one of the two is already gone. Output keeps the input order.
pub fn redundancy_filter(corr: &CorrelationMatrix, threshold: f64) -> Vec<MeasureId> {
    let ms = &corr.measures;
    let mut pairs = Vec::new();
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            if let Some(rho) = corr.values[i][j] {
                if rho.abs() > threshold {
                    let (cheap, dear) = if ms[i].cost_rank() < ms[j].cost_rank() {
                        (ms[i], ms[j])
                    } else {
                        (ms[j], ms[i])
                    };
                    pairs.push((rho.abs(), cheap, dear));
                }
            }
        }
    }
    // Ties resolved by cost ranks so the result does not depend on input order.
    pairs.sort_by(|a, b| {
        b.0.total_cmp(&a.0)
            .then(a.1.cost_rank().cmp(&b.1.cost_rank()))
            .then(a.2.cost_rank().cmp(&b.2.cost_rank()))
    });
    let mut removed = Vec::new();
    for (_, cheap, dear) in pairs {
        if removed.contains(&cheap) || removed.contains(&dear) {
            continue;
        }
        removed.push(dear);
    }
    ms.iter().copied().filter(|m| !removed.contains(m)).collect()
}

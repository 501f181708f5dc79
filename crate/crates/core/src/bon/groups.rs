use crate::error::{Error, Result};

/// Population indices of the worst, median and top accuracy groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccuracyGroups {
    pub worst: Vec<usize>,
    pub median: Vec<usize>,
    pub top: Vec<usize>,
}

/// Sorts by accuracy (ties by index) and takes the lowest `group_size`, the
/// `group_size` centred on the median, and the highest `group_size`.
pub fn accuracy_groups(accuracies: &[f64], group_size: usize) -> Result<AccuracyGroups> {
    let n = accuracies.len();
    if group_size == 0 || n < 3 * group_size {
        return Err(Error::InvalidArgument(format!(
            "population of {n} cannot hold three disjoint groups of {group_size}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| accuracies[a].total_cmp(&accuracies[b]).then(a.cmp(&b)));
    let mid = (n - group_size) / 2;
    if mid < group_size || mid + group_size > n - group_size {
        return Err(Error::InvalidArgument(format!(
            "median group of {group_size} overlaps the extremes in a population of {n}"
        )));
    }
    Ok(AccuracyGroups {
        worst: order[..group_size].to_vec(),
        median: order[mid..mid + group_size].to_vec(),
        top: order[n - group_size..].to_vec(),
    })
}

use crate::error::{Error, Result};
use crate::types::{distance_unchecked, WeightVector};

/// For each weight, the indices of the `t` nearest weights (itself included),
/// nearest first. Equal distances are ordered by index.
pub fn neighborhoods(weights: &[WeightVector], t: usize) -> Result<Vec<Vec<usize>>> {
    if t == 0 || t > weights.len() {
        return Err(Error::Precondition(format!(
            "neighborhood size {t} must lie in 1..={}",
            weights.len()
        )));
    }
    Ok(weights
        .iter()
        .map(|w| {
            let mut order: Vec<(f64, usize)> = weights
                .iter()
                .enumerate()
                .map(|(j, v)| (distance_unchecked(w, v), j))
                .collect();
            order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            order.into_iter().take(t).map(|(_, j)| j).collect()
        })
        .collect())
}

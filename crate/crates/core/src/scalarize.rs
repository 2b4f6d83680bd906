//! Tchebycheff scalarization and the weight-space maps built on it.

use crate::error::{check_len, Error, Result};
use crate::types::WeightVector;

/// Components below this value are raised to it before the WS-transformation,
/// which divides by every component.
pub const WS_MIN_COMPONENT: f64 = 1e-6;

/// `max_j lambda_j * |f_j - z_j|`.
pub fn tchebycheff(f: &[f64], lambda: &[f64], z_star: &[f64]) -> Result<f64> {
    check_len(lambda.len(), f.len())?;
    check_len(lambda.len(), z_star.len())?;
    Ok(tchebycheff_unchecked(f, lambda, z_star))
}

#[inline]
pub(crate) fn tchebycheff_unchecked(f: &[f64], lambda: &[f64], z_star: &[f64]) -> f64 {
    f.iter()
        .zip(lambda)
        .zip(z_star)
        .map(|((fj, lj), zj)| lj * (fj - zj).abs())
        .fold(0.0, f64::max)
}

fn gaps(f: &[f64], z_star: &[f64]) -> Result<Vec<f64>> {
    check_len(z_star.len(), f.len())?;
    let gaps: Vec<f64> = f.iter().zip(z_star).map(|(fj, zj)| fj - zj).collect();
    if let Some(j) = gaps.iter().position(|g| !(*g >= 0.0)) {
        return Err(Error::Precondition(format!(
            "objective {j} lies below the reference point"
        )));
    }
    Ok(gaps)
}

/// The weight `lambda_i = (f_i - z_i) / sum_k (f_k - z_k)`, i.e. the direction
/// from `z_star` to `f` scaled onto the simplex.
///
/// Satisfies `(f_i - z_i) / lambda_i = const` over its nonzero components.
pub fn optimal_tch_weight(f: &[f64], z_star: &[f64]) -> Result<WeightVector> {
    let gaps = gaps(f, z_star)?;
    let sum: f64 = gaps.iter().sum();
    if sum <= 0.0 {
        return Err(Error::DegeneratePoint);
    }
    WeightVector::new(gaps.into_iter().map(|g| g / sum).collect())
}

/// The weight `lambda_i = (1 / (f_i - z_i)) / sum_k 1 / (f_k - z_k)` of a new
/// subproblem whose Tchebycheff optimum is `f`. Every gap must be strictly
/// positive.
pub fn inverse_gap_weight(f: &[f64], z_star: &[f64]) -> Result<WeightVector> {
    let gaps = gaps(f, z_star)?;
    if let Some(j) = gaps.iter().position(|g| *g <= 0.0) {
        return Err(Error::Domain(format!(
            "objective {j} coincides with the reference point"
        )));
    }
    let inv: Vec<f64> = gaps.iter().map(|g| 1.0 / g).collect();
    let sum: f64 = inv.iter().sum();
    WeightVector::new(inv.into_iter().map(|v| v / sum).collect())
}

/// Raises components below [`WS_MIN_COMPONENT`] to that floor and
/// renormalizes. Vectors already above the floor are returned unchanged.
pub fn repair_zero_components(lambda: &WeightVector) -> WeightVector {
    if lambda.iter().all(|&c| c >= WS_MIN_COMPONENT) {
        return lambda.clone();
    }
    let raised: Vec<f64> = lambda.iter().map(|&c| c.max(WS_MIN_COMPONENT)).collect();
    let sum: f64 = raised.iter().sum();
    WeightVector::new(raised.into_iter().map(|c| c / sum).collect())
        .expect("raised components stay on the simplex")
}

/// The WS-transformation: componentwise reciprocal, then normalize. An
/// involution on the open simplex.
pub fn ws_transform(lambda: &WeightVector) -> Result<WeightVector> {
    let repaired = repair_zero_components(lambda);
    if let Some(j) = repaired.iter().position(|c| !(*c > 0.0)) {
        return Err(Error::Domain(format!(
            "component {j} is not strictly positive"
        )));
    }
    let inv: Vec<f64> = repaired.iter().map(|c| 1.0 / c).collect();
    let sum: f64 = inv.iter().sum();
    WeightVector::new(inv.into_iter().map(|v| v / sum).collect())
}

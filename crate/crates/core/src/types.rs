//! Value types shared across the crate and the Pareto dominance relation.
//!
//! All comparisons assume minimization.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};

/// Simplex tolerance for weight vectors. Inputs whose component sum is within
/// this distance of one are renormalized; anything further off is rejected.
pub const SIMPLEX_TOLERANCE: f64 = 1e-9;

/// Objective values `F(x) = (f_1, ..., f_m)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Precondition(format!(
                "objective vectors need at least 2 entries, got {}",
                values.len()
            )));
        }
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("objective {j} is not finite")));
        }
        Ok(Self(values))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ObjectiveVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// A point of the decision space. Box bounds belong to the problem, so they
/// are checked at evaluation time rather than here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DecisionVector(Vec<f64>);

impl DecisionVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for DecisionVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// A point on the unit simplex identifying one scalar subproblem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Validates nonnegativity and the simplex sum. Sums within
    /// [`SIMPLEX_TOLERANCE`] of one are renormalized exactly.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidWeight("empty weight vector".into()));
        }
        if let Some(j) = components.iter().position(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::InvalidWeight(format!(
                "component {j} = {} is negative or not finite",
                components[j]
            )));
        }
        let sum: f64 = components.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
            return Err(Error::InvalidWeight(format!(
                "components sum to {sum}, not 1"
            )));
        }
        if sum == 1.0 {
            return Ok(Self(components));
        }
        Ok(Self(components.into_iter().map(|c| c / sum).collect()))
    }

    /// Scales a nonnegative vector with positive sum onto the simplex.
    pub fn normalized(components: Vec<f64>) -> Result<Self> {
        if let Some(j) = components.iter().position(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::InvalidWeight(format!(
                "component {j} = {} is negative or not finite",
                components[j]
            )));
        }
        let sum: f64 = components.iter().sum();
        if sum <= 0.0 {
            return Err(Error::InvalidWeight("components sum to zero".into()));
        }
        Ok(Self(components.into_iter().map(|c| c / sum).collect()))
    }

    /// The `j`-th extreme vector `(0, ..., 1, ..., 0)`.
    pub fn unit(m: usize, j: usize) -> Self {
        let mut c = vec![0.0; m];
        c[j] = 1.0;
        Self(c)
    }

    pub fn uniform(m: usize) -> Self {
        Self(vec![1.0 / m as f64; m])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for WeightVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// A decision vector paired with its objective vector. Constructed only from
/// an evaluation, so `f` always belongs to `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub x: DecisionVector,
    pub f: ObjectiveVector,
}

impl Individual {
    pub fn new(x: DecisionVector, f: ObjectiveVector) -> Self {
        Self { x, f }
    }
}

/// Running componentwise minimum of every objective vector seen in a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReferencePoint(Vec<f64>);

impl ReferencePoint {
    pub fn new(z_star: Vec<f64>) -> Self {
        Self(z_star)
    }

    /// Componentwise minimum over a nonempty set of objective vectors.
    pub fn from_objectives<'a, I>(objectives: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a ObjectiveVector>,
    {
        let mut iter = objectives.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::Precondition("no objective vectors".into()))?;
        let mut z = Self(first.to_vec());
        for f in iter {
            z.observe(f)?;
        }
        Ok(z)
    }

    /// Folds one more objective vector into the running minimum.
    pub fn observe(&mut self, f: &[f64]) -> Result<()> {
        check_len(self.0.len(), f.len())?;
        for (z, &v) in self.0.iter_mut().zip(f) {
            if v < *z {
                *z = v;
            }
        }
        Ok(())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl Deref for ReferencePoint {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Pareto dominance under minimization: `a` is no worse everywhere and
/// strictly better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    check_len(a.len(), b.len())?;
    Ok(dominates_unchecked(a, b))
}

pub(crate) fn dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    check_len(a.len(), b.len())?;
    Ok(distance_unchecked(a, b))
}

pub(crate) fn distance_unchecked(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

//! Final-set assessment: min–max normalization, nondominated filtering and
//! the exact hypervolume indicator.

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::rng::RngStream;
use crate::types::dominates_unchecked;

/// Reference coordinate used on every normalized axis.
pub const HV_REFERENCE: f64 = 1.2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationBounds {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl NormalizationBounds {
    pub fn new(min: Vec<f64>, max: Vec<f64>) -> Result<Self> {
        check_len(min.len(), max.len())?;
        if let Some(j) = (0..min.len()).find(|&j| !(min[j] < max[j])) {
            return Err(Error::DegenerateAxis(j));
        }
        Ok(Self { min, max })
    }

    /// Componentwise extremes over the union of all given point sets.
    pub fn from_union<'a, I>(sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [Vec<f64>]>,
    {
        let mut min: Vec<f64> = Vec::new();
        let mut max: Vec<f64> = Vec::new();
        for set in sets {
            for p in set {
                if min.is_empty() {
                    min = p.clone();
                    max = p.clone();
                    continue;
                }
                check_len(min.len(), p.len())?;
                for (j, &v) in p.iter().enumerate() {
                    min[j] = min[j].min(v);
                    max[j] = max[j].max(v);
                }
            }
        }
        if min.is_empty() {
            return Err(Error::Precondition(
                "no points to derive bounds from".into(),
            ));
        }
        Self::new(min, max)
    }

    pub fn dim(&self) -> usize {
        self.min.len()
    }
}

/// Maps each coordinate to `(v - min_j) / (max_j - min_j)`. Values outside
/// `[0, 1]` are kept.
pub fn normalize(points: &[Vec<f64>], bounds: &NormalizationBounds) -> Result<Vec<Vec<f64>>> {
    points
        .iter()
        .map(|p| {
            check_len(bounds.dim(), p.len())?;
            Ok(p.iter()
                .enumerate()
                .map(|(j, v)| (v - bounds.min[j]) / (bounds.max[j] - bounds.min[j]))
                .collect())
        })
        .collect()
}

/// Points not dominated by any other point, in input order. Identical points
/// do not dominate each other, so duplicates are all kept.
pub fn nondominated_filter(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    nondominated_indices(points)
        .into_iter()
        .map(|i| points[i].clone())
        .collect()
}

pub(crate) fn nondominated_indices(points: &[Vec<f64>]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            !points
                .iter()
                .enumerate()
                .any(|(j, q)| j != i && dominates_unchecked(q, &points[i]))
        })
        .collect()
}

/// Exact hypervolume of the region dominated by `points` and bounded by
/// `z_ref`. Points that do not strictly dominate `z_ref` in every coordinate
/// contribute nothing and are dropped.
pub fn hypervolume(points: &[Vec<f64>], z_ref: &[f64]) -> Result<f64> {
    let mut kept: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for p in points {
        check_len(z_ref.len(), p.len())?;
        if p.iter().zip(z_ref).all(|(v, r)| v < r) {
            kept.push(p.clone());
        }
    }
    if kept.is_empty() {
        return Ok(0.0);
    }
    if z_ref.len() == 1 {
        let best = kept.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
        return Ok(z_ref[0] - best);
    }
    let mut front = pareto_front(kept);
    Ok(hv_recursive(&mut front, z_ref))
}

/// Normalizes with `bounds`, then measures against `(1.2, ..., 1.2)`.
pub fn normalized_hypervolume(points: &[Vec<f64>], bounds: &NormalizationBounds) -> Result<f64> {
    let normalized = normalize(points, bounds)?;
    hypervolume(&normalized, &vec![HV_REFERENCE; bounds.dim()])
}

/// Closed form for two objectives: sort by `f_1` and sum the strips.
pub fn hypervolume_2d(points: &[Vec<f64>], z_ref: &[f64]) -> Result<f64> {
    check_len(2, z_ref.len())?;
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for p in points {
        check_len(2, p.len())?;
        if p[0] < z_ref[0] && p[1] < z_ref[1] {
            pts.push((p[0], p[1]));
        }
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut area = 0.0;
    let mut ceiling = z_ref[1];
    for (x, y) in pts {
        if y < ceiling {
            area += (z_ref[0] - x) * (ceiling - y);
            ceiling = y;
        }
    }
    Ok(area)
}

/// Monte Carlo estimate and its standard error, sampling uniformly in the box
/// spanned by the componentwise minimum of the points and `z_ref`.
pub fn hypervolume_monte_carlo(
    points: &[Vec<f64>],
    z_ref: &[f64],
    samples: usize,
    rng: &mut RngStream,
) -> Result<(f64, f64)> {
    let kept: Vec<&Vec<f64>> = points
        .iter()
        .filter(|p| p.len() == z_ref.len() && p.iter().zip(z_ref).all(|(v, r)| v < r))
        .collect();
    if kept.is_empty() || samples == 0 {
        return Ok((0.0, 0.0));
    }
    let m = z_ref.len();
    let lower: Vec<f64> = (0..m)
        .map(|j| kept.iter().map(|p| p[j]).fold(f64::INFINITY, f64::min))
        .collect();
    let volume: f64 = (0..m).map(|j| z_ref[j] - lower[j]).product();
    let mut sample = vec![0.0; m];
    let mut hits = 0usize;
    for _ in 0..samples {
        for j in 0..m {
            sample[j] = lower[j] + rng.uniform() * (z_ref[j] - lower[j]);
        }
        if kept
            .iter()
            .any(|p| p.iter().zip(&sample).all(|(a, b)| a <= b))
        {
            hits += 1;
        }
    }
    let frac = hits as f64 / samples as f64;
    let se = volume * (frac * (1.0 - frac) / samples as f64).sqrt();
    Ok((volume * frac, se))
}

/// Nondominated subset with duplicates collapsed.
fn pareto_front(mut pts: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    pts.sort_by(|a, b| lexicographic(a, b));
    pts.dedup();
    let mut front: Vec<Vec<f64>> = Vec::with_capacity(pts.len());
    // After a lexicographic sort no point can dominate an earlier one.
    for p in pts {
        if !front.iter().any(|q| dominates_unchecked(q, &p)) {
            front.push(p);
        }
    }
    front
}

fn lexicographic(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// Sweeps the points in increasing order of the first objective. Each point
/// contributes its box minus the volume already claimed by the points that
/// follow it, clipped to that box. The clipped set is filtered and handled
/// recursively, bottoming out in the two-objective strip sum.
///
/// `front` must be mutually nondominated and strictly inside `z_ref`.
fn hv_recursive(front: &mut [Vec<f64>], z_ref: &[f64]) -> f64 {
    match front.len() {
        0 => return 0.0,
        1 => return box_volume(&front[0], z_ref),
        _ => {}
    }
    if z_ref.len() == 2 {
        return strip_2d(front, z_ref);
    }
    front.sort_by(|a, b| a[0].total_cmp(&b[0]).then_with(|| lexicographic(a, b)));
    let mut total = 0.0;
    for i in 0..front.len() {
        let p = &front[i];
        let limited: Vec<Vec<f64>> = front[i + 1..]
            .iter()
            .map(|q| q.iter().zip(p).map(|(a, b)| a.max(*b)).collect())
            .collect();
        let mut limited = pareto_front(limited);
        total += box_volume(p, z_ref) - hv_recursive(&mut limited, z_ref);
    }
    total
}

fn strip_2d(front: &mut [Vec<f64>], z_ref: &[f64]) -> f64 {
    front.sort_by(|a, b| a[0].total_cmp(&b[0]));
    let mut area = 0.0;
    let mut ceiling = z_ref[1];
    for p in front.iter() {
        if p[1] < ceiling {
            area += (z_ref[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    area
}

fn box_volume(p: &[f64], z_ref: &[f64]) -> f64 {
    p.iter().zip(z_ref).map(|(a, r)| r - a).product()
}

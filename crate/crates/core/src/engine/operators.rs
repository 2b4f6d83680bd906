//! Variation, mating and replacement operators of the decomposition loop.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::scalarize::tchebycheff_unchecked;
use crate::types::{DecisionVector, Individual, ReferencePoint};

use super::Subproblem;

/// What to do with a DE trial component that leaves the box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundRepair {
    /// Clip to the violated bound.
    #[default]
    Clip,
    /// Uniform redraw between the violated bound and the target's value.
    Redraw,
}

/// DE/rand/1 with binomial crossover against the target.
///
/// `r1`, `r2`, `r3` are distinct members of `mating_pool`; the trial vector
/// `x_r1 + F (x_r2 - x_r3)` is crossed with `pop[target_index]` at rate `cr`
/// and repaired into `bounds`.
#[allow(clippy::too_many_arguments)]
pub fn de_crossover(
    target_index: usize,
    mating_pool: &[usize],
    pop: &[&[f64]],
    f: f64,
    cr: f64,
    bounds: &[(f64, f64)],
    repair: BoundRepair,
    rng: &mut RngStream,
) -> Result<DecisionVector> {
    if mating_pool.len() < 3 {
        return Err(Error::Precondition(format!(
            "DE needs a mating pool of at least 3, got {}",
            mating_pool.len()
        )));
    }
    let [r1, r2, r3] = distinct_three(mating_pool, rng);
    let target = pop[target_index];
    let (a, b, c) = (pop[r1], pop[r2], pop[r3]);
    let n = target.len();
    let forced = rng.index(n);
    let mut child = Vec::with_capacity(n);
    for j in 0..n {
        let take_trial = rng.uniform() < cr || j == forced;
        let mut v = if take_trial {
            a[j] + f * (b[j] - c[j])
        } else {
            target[j]
        };
        let (lo, hi) = bounds[j];
        if v < lo || v > hi {
            v = match repair {
                BoundRepair::Clip => v.clamp(lo, hi),
                BoundRepair::Redraw => {
                    let anchor = target[j].clamp(lo, hi);
                    let u = rng.uniform();
                    if v < lo {
                        lo + u * (anchor - lo)
                    } else {
                        hi - u * (hi - anchor)
                    }
                }
            };
        }
        child.push(v);
    }
    Ok(DecisionVector::new(child))
}

fn distinct_three(pool: &[usize], rng: &mut RngStream) -> [usize; 3] {
    let i = rng.index(pool.len());
    let mut j = rng.index(pool.len() - 1);
    if j >= i {
        j += 1;
    }
    let mut k = rng.index(pool.len() - 2);
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    if k >= lo {
        k += 1;
    }
    if k >= hi {
        k += 1;
    }
    [pool[i], pool[j], pool[k]]
}

/// Bounded polynomial mutation; each component mutates with probability `pm`.
pub fn polynomial_mutation(
    x: &DecisionVector,
    pm: f64,
    eta_m: f64,
    bounds: &[(f64, f64)],
    rng: &mut RngStream,
) -> DecisionVector {
    let mut y = x.clone();
    for (j, v) in y.as_mut_slice().iter_mut().enumerate() {
        if rng.uniform() >= pm {
            continue;
        }
        let (lo, hi) = bounds[j];
        let span = hi - lo;
        if span <= 0.0 {
            continue;
        }
        let delta1 = (*v - lo) / span;
        let delta2 = (hi - *v) / span;
        let power = 1.0 / (eta_m + 1.0);
        let u = rng.uniform();
        let deltaq = if u <= 0.5 {
            let xy = 1.0 - delta1;
            let val = 2.0 * u + (1.0 - 2.0 * u) * xy.powf(eta_m + 1.0);
            val.powf(power) - 1.0
        } else {
            let xy = 1.0 - delta2;
            let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * xy.powf(eta_m + 1.0);
            1.0 - val.powf(power)
        };
        *v = (*v + deltaq * span).clamp(lo, hi);
    }
    y
}

/// The neighborhood of `i` with probability `delta`, otherwise every index.
pub fn mating_pool(
    i: usize,
    delta: f64,
    neighbors: &[Vec<usize>],
    rng: &mut RngStream,
) -> Vec<usize> {
    if rng.uniform() < delta {
        neighbors[i].clone()
    } else {
        (0..neighbors.len()).collect()
    }
}

/// Offers `offspring` to subproblems drawn uniformly without replacement from
/// `candidates`. A subproblem takes it when the offspring's Tchebycheff value
/// under that subproblem's weight is no worse than the incumbent's. Stops after
/// `nr` replacements or when the candidates run out. Returns the number of
/// replacements.
pub fn replace(
    offspring: &Individual,
    mut candidates: Vec<usize>,
    pop: &mut [Subproblem],
    nr: usize,
    z_star: &ReferencePoint,
    rng: &mut RngStream,
) -> usize {
    let mut updated = 0;
    while updated < nr && !candidates.is_empty() {
        let pick = rng.index(candidates.len());
        let j = candidates.swap_remove(pick);
        let sub = &mut pop[j];
        let new = tchebycheff_unchecked(&offspring.f, &sub.weight, z_star);
        let old = tchebycheff_unchecked(&sub.solution.f, &sub.weight, z_star);
        if new <= old {
            sub.solution = offspring.clone();
            updated += 1;
        }
    }
    updated
}

/// Componentwise minimum of `z_star` and `f`.
pub fn update_reference(z_star: &ReferencePoint, f: &[f64]) -> Result<ReferencePoint> {
    let mut next = z_star.clone();
    next.observe(f)?;
    Ok(next)
}

//! Fixed weight-set generators: Das–Dennis lattices, uniformly random
//! farthest-point sets, and Tchebycheff-optimal weights of given solutions.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{read_matrix, write_matrix};
use crate::rng::RngStream;
use crate::scalarize::optimal_tch_weight;
use crate::types::{distance_unchecked, Individual, WeightVector};

/// Pool size used by the uniformly random generator unless overridden.
pub const DEFAULT_POOL_SIZE: usize = 5000;

/// Largest lattice [`das_dennis`] will materialize.
pub const MAX_LATTICE_SIZE: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightMethod {
    #[serde(rename = "DD")]
    DasDennis,
    #[serde(rename = "UR")]
    UniformRandom,
    #[serde(rename = "TSF")]
    Tchebycheff,
}

impl fmt::Display for WeightMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightMethod::DasDennis => "DD",
            WeightMethod::UniformRandom => "UR",
            WeightMethod::Tchebycheff => "TSF",
        })
    }
}

impl FromStr for WeightMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "DD" => Ok(WeightMethod::DasDennis),
            "UR" => Ok(WeightMethod::UniformRandom),
            "TSF" => Ok(WeightMethod::Tchebycheff),
            other => Err(Error::Config(format!("unknown weight method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightSet {
    pub vectors: Vec<WeightVector>,
    pub method: WeightMethod,
}

impl WeightSet {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// One vector per line, 17 significant digits.
    pub fn write_text<W: Write>(&self, out: W) -> std::io::Result<()> {
        let rows: Vec<Vec<f64>> = self.vectors.iter().map(|v| v.to_vec()).collect();
        write_matrix(out, &rows)
    }

    pub fn read_text<R: BufRead>(input: R, method: WeightMethod) -> Result<Self> {
        let vectors = read_matrix(input)?
            .into_iter()
            .map(WeightVector::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { vectors, method })
    }
}

/// `n choose k`, or `None` when it does not fit in a `u128`.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Number of lattice points with `h` divisions on an `m`-simplex.
pub fn lattice_size(m: usize, h: usize) -> Option<u128> {
    binomial((h + m - 1) as u64, (m - 1) as u64)
}

/// The simplex lattice with `h` divisions per axis, in lexicographic order.
pub fn das_dennis(m: usize, h: usize) -> Result<WeightSet> {
    if m < 2 || h < 1 {
        return Err(Error::Precondition(format!(
            "das_dennis needs m >= 2 and H >= 1, got m={m}, H={h}"
        )));
    }
    let size = lattice_size(m, h)
        .filter(|s| *s <= MAX_LATTICE_SIZE)
        .ok_or_else(|| Error::Capacity(format!("lattice with m={m}, H={h} is too large")))?;

    let mut vectors = Vec::with_capacity(size as usize);
    let mut counts = vec![0usize; m];
    fill_lattice(&mut counts, 0, h, h, &mut vectors);
    debug_assert_eq!(vectors.len() as u128, size);
    Ok(WeightSet {
        vectors,
        method: WeightMethod::DasDennis,
    })
}

fn fill_lattice(
    counts: &mut [usize],
    pos: usize,
    left: usize,
    h: usize,
    out: &mut Vec<WeightVector>,
) {
    if pos + 1 == counts.len() {
        counts[pos] = left;
        let comps = counts.iter().map(|&c| c as f64 / h as f64).collect();
        out.push(WeightVector::new(comps).expect("lattice point on simplex"));
        return;
    }
    for c in 0..=left {
        counts[pos] = c;
        fill_lattice(counts, pos + 1, left - c, h, out);
    }
}

/// Divisions whose lattice size is closest to `target`, preferring the
/// smaller lattice on ties.
pub fn divisions_for(m: usize, target: usize) -> Result<usize> {
    let mut best: Option<(usize, u128)> = None;
    for h in 1.. {
        let size = lattice_size(m, h).ok_or_else(|| {
            Error::Capacity(format!("no lattice near {target} vectors for m={m}"))
        })?;
        let gap = size.abs_diff(target as u128);
        if best.is_none_or(|(_, g)| gap < g) {
            best = Some((h, gap));
        }
        if size >= target as u128 {
            break;
        }
    }
    Ok(best.expect("loop runs at least once").0)
}

/// A uniform draw from the unit simplex: normalized exponential spacings.
pub fn sample_simplex(m: usize, rng: &mut RngStream) -> WeightVector {
    let e: Vec<f64> = (0..m).map(|_| -(1.0 - rng.uniform()).ln()).collect();
    let sum: f64 = e.iter().sum();
    if sum > 0.0 {
        WeightVector::new(e.into_iter().map(|v| v / sum).collect()).expect("simplex sample")
    } else {
        WeightVector::uniform(m)
    }
}

/// Uniformly random weights: `pool_size` simplex samples, then greedy
/// farthest-point selection starting from the `m` extreme vectors.
pub fn uniform_random_weights(
    n: usize,
    m: usize,
    pool_size: usize,
    rng: &mut RngStream,
) -> Result<WeightSet> {
    if n < m {
        return Err(Error::Precondition(format!(
            "need at least m={m} weight vectors, asked for {n}"
        )));
    }
    if pool_size < n {
        return Err(Error::Precondition(format!(
            "pool of {pool_size} cannot supply {n} vectors"
        )));
    }
    let pool: Vec<WeightVector> = (0..pool_size).map(|_| sample_simplex(m, rng)).collect();
    farthest_point_selection(n, m, &pool)
}

/// Greedy max-min selection from a fixed pool. Ties go to the lowest pool
/// index; chosen vectors leave the pool.
pub fn farthest_point_selection(n: usize, m: usize, pool: &[WeightVector]) -> Result<WeightSet> {
    if n < m {
        return Err(Error::Precondition(format!(
            "need at least m={m} weight vectors, asked for {n}"
        )));
    }
    if pool.len() < n - m {
        return Err(Error::Precondition(format!(
            "pool of {} cannot supply {} vectors",
            pool.len(),
            n - m
        )));
    }
    if let Some(bad) = pool.iter().find(|w| w.len() != m) {
        return Err(Error::Dimension {
            expected: m,
            found: bad.len(),
        });
    }

    let mut chosen: Vec<WeightVector> = (0..m).map(|j| WeightVector::unit(m, j)).collect();
    let mut nearest: Vec<f64> = pool
        .iter()
        .map(|p| {
            chosen
                .iter()
                .map(|c| distance_unchecked(p, c))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mut taken = vec![false; pool.len()];

    while chosen.len() < n {
        let mut best: Option<usize> = None;
        for (i, d) in nearest.iter().enumerate() {
            if taken[i] {
                continue;
            }
            if best.is_none_or(|b| *d > nearest[b]) {
                best = Some(i);
            }
        }
        let pick = best.expect("pool size checked above");
        taken[pick] = true;
        let new = pool[pick].clone();
        for (i, d) in nearest.iter_mut().enumerate() {
            if !taken[i] {
                *d = d.min(distance_unchecked(&pool[i], &new));
            }
        }
        chosen.push(new);
    }

    Ok(WeightSet {
        vectors: chosen,
        method: WeightMethod::UniformRandom,
    })
}

/// The Tchebycheff-optimal weight of each individual with respect to
/// `z_star`. Individuals sitting exactly on `z_star` get the uniform weight.
pub fn tsf_weights(initial_pop: &[Individual], z_star: &[f64], n: usize) -> Result<WeightSet> {
    if initial_pop.len() != n {
        return Err(Error::Precondition(format!(
            "expected {n} individuals, got {}",
            initial_pop.len()
        )));
    }
    let vectors = initial_pop
        .iter()
        .map(|ind| match optimal_tch_weight(&ind.f, z_star) {
            Err(Error::DegeneratePoint) => Ok(WeightVector::uniform(z_star.len())),
            other => other,
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightSet {
        vectors,
        method: WeightMethod::Tchebycheff,
    })
}

/// Minimum Euclidean distance from `v` to any member of `set`.
pub fn distance_to_set(v: &[f64], set: &[WeightVector]) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::Precondition("distance to an empty set".into()));
    }
    set.iter()
        .map(|w| crate::types::euclidean_distance(v, w))
        .try_fold(f64::INFINITY, |acc, d| d.map(|d| acc.min(d)))
}

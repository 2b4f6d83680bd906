//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use moead_uraw::RngStream;

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Product of the `m` smallest distances from `points[i]` to every other
/// point, by full sort.
pub fn brute_sparsity(points: &[Vec<f64>], i: usize, m: usize) -> f64 {
    let mut d: Vec<f64> = (0..points.len())
        .filter(|&j| j != i)
        .map(|j| dist(&points[i], &points[j]))
        .collect();
    d.sort_by(f64::total_cmp);
    d.iter().take(m).product()
}

/// Repeatedly drops the point with the extreme sparsity among the
/// survivors (ties to the lowest index); returns the surviving indices.
pub fn brute_iterative_removal(
    points: &[Vec<f64>],
    m: usize,
    removals: usize,
    highest: bool,
) -> Vec<usize> {
    let mut alive: Vec<usize> = (0..points.len()).collect();
    for _ in 0..removals {
        let subset: Vec<Vec<f64>> = alive.iter().map(|&i| points[i].clone()).collect();
        let levels: Vec<f64> = (0..subset.len())
            .map(|k| brute_sparsity(&subset, k, m))
            .collect();
        let mut pick = 0;
        for k in 1..levels.len() {
            let better = if highest {
                levels[k] > levels[pick]
            } else {
                levels[k] < levels[pick]
            };
            if better {
                pick = k;
            }
        }
        alive.remove(pick);
    }
    alive
}

pub fn weakly_dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn strictly_dominates(a: &[f64], b: &[f64]) -> bool {
    weakly_dominates(a, b) && a.iter().zip(b).any(|(x, y)| x < y)
}

/// Indices of points not dominated by any other, by all-pairs comparison.
pub fn brute_nondominated(points: &[Vec<f64>]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            !(0..points.len()).any(|j| j != i && strictly_dominates(&points[j], &points[i]))
        })
        .collect()
}

/// Plain Monte Carlo hypervolume over the box `[min, z_ref]`, returning the
/// estimate and its standard error.
pub fn mc_hypervolume(
    points: &[Vec<f64>],
    z_ref: &[f64],
    samples: usize,
    rng: &mut RngStream,
) -> (f64, f64) {
    let m = z_ref.len();
    let lower: Vec<f64> = (0..m)
        .map(|j| points.iter().map(|p| p[j]).fold(f64::INFINITY, f64::min))
        .collect();
    let vol: f64 = (0..m).map(|j| z_ref[j] - lower[j]).product();
    let mut s = vec![0.0; m];
    let mut hit = 0u64;
    for _ in 0..samples {
        for j in 0..m {
            s[j] = lower[j] + rng.uniform() * (z_ref[j] - lower[j]);
        }
        if points.iter().any(|p| weakly_dominates(p, &s)) {
            hit += 1;
        }
    }
    let p = hit as f64 / samples as f64;
    (vol * p, vol * (p * (1.0 - p) / samples as f64).sqrt())
}

/// Two-sided permutation p-value of the rank-sum statistic, enumerating
/// every way to assign the pooled midranks to the first sample:
/// `P(|W - mu| >= |w - mu|)`.
pub fn exhaustive_rank_sum_p(a: &[f64], b: &[f64]) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let n = pooled.len();
    let ranks: Vec<f64> = pooled
        .iter()
        .map(|&v| {
            let below = pooled.iter().filter(|&&u| u < v).count() as f64;
            let equal = pooled.iter().filter(|&&u| u == v).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect();
    let observed: f64 = ranks[..a.len()].iter().sum();
    let mu = a.len() as f64 * (n as f64 + 1.0) / 2.0;
    let target = (observed - mu).abs();
    let (mut extreme, mut total) = (0u64, 0u64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != a.len() {
            continue;
        }
        let w: f64 = (0..n)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| ranks[i])
            .sum();
        total += 1;
        if (w - mu).abs() >= target - 1e-9 {
            extreme += 1;
        }
    }
    extreme as f64 / total as f64
}

pub fn binomial(n: u64, k: u64) -> u64 {
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn random_points(n: usize, m: usize, rng: &mut RngStream) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..m).map(|_| rng.uniform()).collect())
        .collect()
}

/// Random points on the positive unit sphere: mutually nondominated.
pub fn sphere_points(n: usize, m: usize, rng: &mut RngStream) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            let v: Vec<f64> = (0..m).map(|_| rng.uniform() + 1e-3).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter().map(|x| x / norm).collect()
        })
        .collect()
}

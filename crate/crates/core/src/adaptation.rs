//! Sparsity-driven subproblem adaptation and external archive maintenance.
//!
//! The sparsity level of a point is the product of its `m` smallest Euclidean
//! distances, in objective space, to the other members of a reference set.
//! Low values mark crowded regions. Adaptation removes the most crowded
//! subproblems from the population and then creates new ones from the most
//! isolated archive members.

use serde::{Deserialize, Serialize};

use crate::engine::Subproblem;
use crate::error::{check_len, Error, Result};
use crate::scalarize::inverse_gap_weight;
use crate::types::{distance_unchecked, dominates_unchecked, Individual};

/// Archive capacity relative to the population size.
pub const DEFAULT_CAPACITY_FACTOR: f64 = 2.0;

/// Which archive member leaves when the archive is over capacity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrimPolicy {
    /// The most isolated member goes first.
    #[default]
    HighestSparsity,
    /// The most crowded member goes first.
    LowestSparsity,
}

/// Product of the `m` smallest distances from `ind` to the members of `pop`.
/// The first member of `pop` identical to `ind` is taken to be `ind` itself
/// and skipped; further identical members contribute a zero distance.
pub fn sparsity_level(ind: &Individual, pop: &[Individual], m: usize) -> Result<f64> {
    let mut skipped_self = false;
    let mut others: Vec<&[f64]> = Vec::with_capacity(pop.len());
    for other in pop {
        check_len(ind.f.len(), other.f.len())?;
        if !skipped_self && other.f == ind.f {
            skipped_self = true;
            continue;
        }
        others.push(&other.f);
    }
    if others.len() < m {
        return Err(Error::Precondition(format!(
            "sparsity needs {m} other individuals, found {}",
            others.len()
        )));
    }
    Ok(sparsity_against(&ind.f, &others, m))
}

/// Product of the up-to-`m` smallest distances from `point` to `others`.
/// With fewer than `m` others the product runs over all of them.
pub fn sparsity_against(point: &[f64], others: &[&[f64]], m: usize) -> f64 {
    let mut smallest: Vec<f64> = Vec::with_capacity(m + 1);
    for q in others {
        let d = distance_unchecked(point, q);
        if smallest.len() < m || d < *smallest.last().unwrap_or(&f64::INFINITY) {
            let pos = smallest.partition_point(|&s| s <= d);
            smallest.insert(pos, d);
            smallest.truncate(m);
        }
    }
    smallest.iter().product()
}

/// Sparsity of every point among the others of the same set.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsityReport {
    pub levels: Vec<f64>,
}

impl SparsityReport {
    pub fn among(points: &[&[f64]], m: usize) -> Self {
        let table = CrowdingTable::new(points, m);
        Self {
            levels: (0..points.len()).map(|i| table.level(i)).collect(),
        }
    }
}

/// Per-point neighbor lists sorted by distance. Rows start short and are
/// rebuilt wider when removals leave fewer than `m` live entries in a row
/// that was truncated. Levels are cached and refreshed only for rows whose
/// `m` nearest live neighbors lose a member.
struct CrowdingTable<'a> {
    points: &'a [&'a [f64]],
    rows: Vec<Vec<(f64, usize)>>,
    /// Position in each row just past its `m`-th live neighbor.
    prefix: Vec<usize>,
    levels: Vec<f64>,
    alive: Vec<bool>,
    live: usize,
    m: usize,
}

/// Inserts `(d, j)` into a row sorted by distance then index, keeping at
/// most `width` entries. Candidates must arrive in increasing `j` for equal
/// distances to stay in index order.
fn offer(row: &mut Vec<(f64, usize)>, width: usize, d: f64, j: usize) {
    if row.len() == width && d >= row[width - 1].0 {
        return;
    }
    let pos = row.partition_point(|&(e, _)| e <= d);
    row.insert(pos, (d, j));
    row.truncate(width);
}

/// Extra entries kept per row beyond the `m` that define the level.
const ROW_SLACK: usize = 4;

impl<'a> CrowdingTable<'a> {
    fn new(points: &'a [&'a [f64]], m: usize) -> Self {
        let n = points.len();
        let mut table = Self {
            points,
            rows: Vec::with_capacity(n),
            prefix: vec![0; n],
            levels: vec![0.0; n],
            alive: vec![true; n],
            live: n,
            m,
        };
        // Each pair once, on squared distances; roots are taken for the
        // entries that survive.
        let width = m + ROW_SLACK;
        table.rows = vec![Vec::with_capacity(width + 1); n];
        for i in 0..n {
            for j in i + 1..n {
                let d2: f64 = points[i]
                    .iter()
                    .zip(points[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                offer(&mut table.rows[i], width, d2, j);
                offer(&mut table.rows[j], width, d2, i);
            }
        }
        for row in &mut table.rows {
            for e in row.iter_mut() {
                e.0 = e.0.sqrt();
            }
        }
        for i in 0..n {
            table.refresh(i);
        }
        table
    }

    /// The `width` nearest live points to `i`, by distance then index.
    fn nearest(&self, i: usize, width: usize) -> Vec<(f64, usize)> {
        let mut row: Vec<(f64, usize)> = Vec::with_capacity(width + 1);
        let p = self.points[i];
        for (j, q) in self.points.iter().enumerate() {
            if j == i || !self.alive[j] {
                continue;
            }
            offer(&mut row, width, distance_unchecked(p, q), j);
        }
        row
    }

    fn refresh(&mut self, i: usize) {
        loop {
            let mut level = 1.0;
            let mut taken = 0;
            let mut end = 0;
            for (pos, &(d, j)) in self.rows[i].iter().enumerate() {
                if taken == self.m {
                    break;
                }
                end = pos + 1;
                if self.alive[j] {
                    level *= d;
                    taken += 1;
                }
            }
            if taken < self.m && taken + 1 < self.live {
                let width = 2 * self.rows[i].len().max(self.m);
                self.rows[i] = self.nearest(i, width);
                continue;
            }
            self.prefix[i] = end;
            self.levels[i] = level;
            return;
        }
    }

    fn level(&self, i: usize) -> f64 {
        self.levels[i]
    }

    /// Alive index with the extreme level; ties go to the lowest index.
    fn extreme(&self, highest: bool) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for i in (0..self.alive.len()).filter(|&i| self.alive[i]) {
            let level = self.levels[i];
            let better = match best {
                None => true,
                Some((_, b)) if highest => level > b,
                Some((_, b)) => level < b,
            };
            if better {
                best = Some((i, level));
            }
        }
        best.map(|(i, _)| i)
    }

    fn remove(&mut self, v: usize) {
        self.alive[v] = false;
        self.live -= 1;
        for i in 0..self.rows.len() {
            if self.alive[i] && self.rows[i][..self.prefix[i]].iter().any(|&(_, j)| j == v) {
                self.refresh(i);
            }
        }
    }
}

/// Removes `nus` subproblems one at a time, each time dropping the one whose
/// solution has the lowest sparsity among the surviving solutions.
pub fn remove_overcrowded(pop: Vec<Subproblem>, nus: usize) -> Result<Vec<Subproblem>> {
    if nus >= pop.len() {
        return Err(Error::Precondition(format!(
            "cannot remove {nus} of {} subproblems",
            pop.len()
        )));
    }
    if nus == 0 {
        return Ok(pop);
    }
    let m = pop[0].solution.f.len();
    let points: Vec<&[f64]> = pop.iter().map(|s| s.solution.f.as_slice()).collect();
    let mut table = CrowdingTable::new(&points, m);
    for _ in 0..nus {
        let victim = table.extreme(false).expect("population larger than nus");
        table.remove(victim);
    }
    let alive = table.alive;
    Ok(pop
        .into_iter()
        .zip(alive)
        .filter_map(|(s, keep)| keep.then_some(s))
        .collect())
}

/// Appends `nus` subproblems built from archive members. Each step picks the
/// eligible member with the highest sparsity against the current population
/// (new subproblems included), gives it the weight whose Tchebycheff optimum
/// it is, and installs it as the new subproblem's solution. A member is
/// eligible when every objective lies strictly above `z_star`.
///
/// New subproblems carry an empty neighbor list; the caller recomputes
/// neighborhoods afterwards.
pub fn add_subproblems(
    mut pop: Vec<Subproblem>,
    ep: &Archive,
    nus: usize,
    z_star: &[f64],
) -> Result<Vec<Subproblem>> {
    if ep.is_empty() {
        return Err(Error::Precondition("archive is empty".into()));
    }
    let eligible: Vec<&Individual> = ep
        .members()
        .iter()
        .filter(|ind| ind.f.iter().zip(z_star).all(|(f, z)| f - z > 0.0))
        .collect();
    if eligible.is_empty() {
        return Err(Error::NoEligibleArchiveMember);
    }
    let m = z_star.len();
    for _ in 0..nus {
        let points: Vec<&[f64]> = pop.iter().map(|s| s.solution.f.as_slice()).collect();
        let mut best: Option<(usize, f64)> = None;
        for (i, ind) in eligible.iter().enumerate() {
            let level = sparsity_against(&ind.f, &points, m);
            if best.is_none_or(|(_, b)| level > b) {
                best = Some((i, level));
            }
        }
        let chosen = eligible[best.expect("eligible is nonempty").0];
        let weight = inverse_gap_weight(&chosen.f, z_star)?;
        pop.push(Subproblem {
            weight,
            neighbors: Vec::new(),
            solution: chosen.clone(),
        });
    }
    Ok(pop)
}

/// Mutually nondominated solutions found during the run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Archive {
    members: Vec<Individual>,
    capacity_factor: f64,
}

impl Default for Archive {
    fn default() -> Self {
        Self::new(DEFAULT_CAPACITY_FACTOR)
    }
}

impl Archive {
    pub fn new(capacity_factor: f64) -> Self {
        Self {
            members: Vec::new(),
            capacity_factor,
        }
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Individual> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn capacity_factor(&self) -> f64 {
        self.capacity_factor
    }

    /// Maximum size for a population of `pop_size`.
    pub fn capacity(&self, pop_size: usize) -> usize {
        (self.capacity_factor * pop_size as f64).floor() as usize
    }

    /// Adds `cand` unless a member dominates it or has the same objective
    /// vector, then drops every member `cand` dominates. Returns whether
    /// `cand` was added.
    pub fn insert(&mut self, cand: &Individual) -> bool {
        if self
            .members
            .iter()
            .any(|q| q.f == cand.f || dominates_unchecked(&q.f, &cand.f))
        {
            return false;
        }
        self.members.retain(|q| !dominates_unchecked(&cand.f, &q.f));
        self.members.push(cand.clone());
        true
    }

    /// Removes members until the archive fits `capacity(pop_size)`,
    /// recomputing sparsity within the archive before each removal.
    pub fn trim(&mut self, pop_size: usize, policy: TrimPolicy) {
        let cap = self.capacity(pop_size);
        if self.members.len() <= cap {
            return;
        }
        let removals = self.members.len() - cap;
        let m = self.members[0].f.len();
        let points: Vec<&[f64]> = self.members.iter().map(|i| i.f.as_slice()).collect();
        let mut table = CrowdingTable::new(&points, m);
        for _ in 0..removals {
            let victim = table
                .extreme(policy == TrimPolicy::HighestSparsity)
                .expect("archive larger than cap");
            table.remove(victim);
        }
        let alive = table.alive;
        let members = std::mem::take(&mut self.members);
        self.members = members
            .into_iter()
            .zip(alive)
            .filter_map(|(ind, keep)| keep.then_some(ind))
            .collect();
    }
}

pub fn archive_insert(ep: &Archive, cand: &Individual) -> Archive {
    let mut next = ep.clone();
    next.insert(cand);
    next
}

pub fn archive_trim(ep: &Archive, pop_size: usize, policy: TrimPolicy) -> Archive {
    let mut next = ep.clone();
    next.trim(pop_size, policy);
    next
}

//! The decomposition loop: one subproblem per weight vector, DE variation
//! within neighborhoods, and optional periodic adaptation of the subproblem
//! set from the external archive.

mod neighbors;
mod operators;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use neighbors::neighborhoods;
pub use operators::{
    de_crossover, mating_pool, polynomial_mutation, replace, update_reference, BoundRepair,
};

use crate::adaptation::{add_subproblems, remove_overcrowded, Archive, TrimPolicy};
use crate::error::{Error, Result};
use crate::metrics::{normalized_hypervolume, NormalizationBounds};
use crate::problems::{random_solution, ProblemDef, ProblemId, ShapeRegistry};
use crate::rng::RngStream;
use crate::scalarize::ws_transform;
use crate::types::{Individual, ObjectiveVector, ReferencePoint, WeightVector};
use crate::weights::{
    das_dennis, divisions_for, tsf_weights, uniform_random_weights, WeightMethod, DEFAULT_POOL_SIZE,
};

/// A weight vector, its neighborhood and its current best solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Subproblem {
    pub weight: WeightVector,
    pub neighbors: Vec<usize>,
    pub solution: Individual,
}

/// The four compared configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    /// Das–Dennis lattice weights.
    #[serde(rename = "DD")]
    DasDennis,
    /// Uniformly random weights.
    #[serde(rename = "UR")]
    UniformRandom,
    /// Tchebycheff-optimal weights of the initial population.
    #[serde(rename = "TSF")]
    Tchebycheff,
    /// Uniformly random weights with periodic subproblem adaptation.
    #[serde(rename = "URAW")]
    AdaptiveUniformRandom,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::DasDennis,
        Algorithm::UniformRandom,
        Algorithm::Tchebycheff,
        Algorithm::AdaptiveUniformRandom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::DasDennis => "DD",
            Algorithm::UniformRandom => "UR",
            Algorithm::Tchebycheff => "TSF",
            Algorithm::AdaptiveUniformRandom => "URAW",
        }
    }

    pub fn weight_method(self) -> WeightMethod {
        match self {
            Algorithm::DasDennis => WeightMethod::DasDennis,
            Algorithm::UniformRandom | Algorithm::AdaptiveUniformRandom => {
                WeightMethod::UniformRandom
            }
            Algorithm::Tchebycheff => WeightMethod::Tchebycheff,
        }
    }

    pub fn adapts(self) -> bool {
        self == Algorithm::AdaptiveUniformRandom
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown algorithm {s:?}")))
    }
}

/// Default population size: 120 up to four objectives, 126 above.
pub fn default_population_size(m: usize) -> usize {
    if m <= 4 {
        120
    } else {
        126
    }
}

/// Everything a single run depends on besides the problem definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemId,
    pub m: usize,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub population_size: usize,
    pub neighborhood_size: usize,
    pub max_generations: usize,
    /// Subproblems removed and added per adaptation.
    pub nus: usize,
    /// Probability of mating within the neighborhood.
    pub delta: f64,
    /// Maximum replacements per offspring.
    pub nr: usize,
    pub cr: f64,
    pub f: f64,
    /// Per-variable mutation probability; `None` means `1/n`.
    pub mutation_probability: Option<f64>,
    pub eta_m: f64,
    /// Apply the WS-transformation to the initial weights.
    pub ws_transform: bool,
    pub pool_size: usize,
    pub repair: BoundRepair,
    pub trim_policy: TrimPolicy,
    pub archive_factor: f64,
    /// Adaptation period as a fraction of `max_generations`.
    pub adaptation_period: f64,
    /// Adaptation stops once this fraction of the run has elapsed.
    pub adaptation_stop: f64,
}

impl RunConfig {
    pub fn new(problem: ProblemId, m: usize, algorithm: Algorithm, seed: u64) -> Self {
        let n = default_population_size(m);
        Self {
            problem,
            m,
            algorithm,
            seed,
            population_size: n,
            neighborhood_size: 24,
            max_generations: 400,
            nus: (0.05 * n as f64).round() as usize,
            delta: 0.9,
            nr: 2,
            cr: 1.0,
            f: 0.5,
            mutation_probability: None,
            eta_m: 20.0,
            ws_transform: true,
            pool_size: DEFAULT_POOL_SIZE,
            repair: BoundRepair::Clip,
            trim_policy: TrimPolicy::HighestSparsity,
            archive_factor: crate::adaptation::DEFAULT_CAPACITY_FACTOR,
            adaptation_period: 0.05,
            adaptation_stop: 0.9,
        }
    }

    /// Generations between adaptations, at least one.
    pub fn adaptation_interval(&self) -> usize {
        ((self.adaptation_period * self.max_generations as f64).round() as usize).max(1)
    }

    /// Whether adaptation runs at the end of generation `g` (0-based).
    pub fn adapts_at(&self, g: usize) -> bool {
        self.algorithm.adapts()
            && g > 0
            && g.is_multiple_of(self.adaptation_interval())
            && (g as f64) < self.adaptation_stop * self.max_generations as f64
    }

    fn validate(&self, n_pop: usize) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if n_pop < 3 {
            return fail(format!("population of {n_pop} is too small for DE"));
        }
        if self.neighborhood_size < 3 || self.neighborhood_size > n_pop {
            return fail(format!(
                "neighborhood size {} must lie in 3..={n_pop}",
                self.neighborhood_size
            ));
        }
        if !(0.0..=1.0).contains(&self.delta) || !(0.0..=1.0).contains(&self.cr) {
            return fail("delta and cr must lie in [0, 1]".into());
        }
        if self.nr == 0 {
            return fail("nr must be positive".into());
        }
        if self.algorithm.adapts() && self.nus >= n_pop {
            return fail(format!(
                "nus={} must be below the population size",
                self.nus
            ));
        }
        if self.archive_factor < 1.0 {
            return fail("archive factor must be at least 1".into());
        }
        Ok(())
    }
}

/// What happened at the adaptation point of a generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdaptationOutcome {
    NotScheduled,
    Applied,
    /// No archive member lay strictly above the reference point; the
    /// population was left as it was.
    Skipped,
}

/// State handed to an observer at the end of every generation.
pub struct GenerationView<'a> {
    pub generation: usize,
    pub population: &'a [Subproblem],
    pub archive: &'a Archive,
    pub z_star: &'a ReferencePoint,
    pub adaptation: AdaptationOutcome,
}

/// Result of one run. Serializes deterministically: the wall time is kept
/// out of the JSON form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub config: RunConfig,
    pub problem: ProblemDef,
    pub generations: usize,
    pub weights: Vec<Vec<f64>>,
    pub objectives: Vec<Vec<f64>>,
    pub decisions: Vec<Vec<f64>>,
    pub archive: Vec<Vec<f64>>,
    pub z_star: Vec<f64>,
    /// Hypervolume of the final population normalized by the nominal front
    /// extent `[0, 2j]` of each objective.
    pub nominal_hv: f64,
    pub evaluations: u64,
    pub adaptations_applied: usize,
    pub adaptations_skipped: usize,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Runs `config` on the problem built from the default shape registry.
pub fn run(config: &RunConfig) -> Result<RunRecord> {
    let problem = ProblemDef::new(config.problem, config.m, &ShapeRegistry::default())?;
    run_on(config, &problem, |_| {})
}

/// Runs `config` on `problem`, calling `observer` after every generation.
pub fn run_on<F>(config: &RunConfig, problem: &ProblemDef, mut observer: F) -> Result<RunRecord>
where
    F: FnMut(&GenerationView<'_>),
{
    let start = Instant::now();
    if problem.m != config.m || problem.id != config.problem {
        return Err(Error::Config(format!(
            "config targets {} with m={} but problem is {} with m={}",
            config.problem, config.m, problem.id, problem.m
        )));
    }
    let m = config.m;
    let mut rng = RngStream::new(config.seed, 0);
    let method = config.algorithm.weight_method();

    let lattice = match method {
        WeightMethod::DasDennis => {
            Some(das_dennis(m, divisions_for(m, config.population_size)?)?.vectors)
        }
        _ => None,
    };
    let n_pop = lattice.as_ref().map_or(config.population_size, Vec::len);
    config.validate(n_pop)?;

    let mut weights = match method {
        WeightMethod::DasDennis => lattice.expect("built above"),
        WeightMethod::UniformRandom => {
            uniform_random_weights(n_pop, m, config.pool_size, &mut rng)?.vectors
        }
        WeightMethod::Tchebycheff => Vec::new(),
    };

    let bounds = problem.bounds();
    let mut evaluations = 0u64;
    let mut evaluate = |x: crate::types::DecisionVector| -> Result<Individual> {
        evaluations += 1;
        let f = ObjectiveVector::new(problem.evaluate_unchecked(&x))?;
        Ok(Individual::new(x, f))
    };
    let initial: Vec<Individual> = (0..n_pop)
        .map(|_| evaluate(random_solution(problem, &mut rng)))
        .collect::<Result<_>>()?;
    let mut z_star = ReferencePoint::from_objectives(initial.iter().map(|i| &i.f))?;

    if method == WeightMethod::Tchebycheff {
        weights = tsf_weights(&initial, &z_star, n_pop)?.vectors;
    }
    if config.ws_transform {
        weights = weights.iter().map(ws_transform).collect::<Result<_>>()?;
    }
    let table = neighborhoods(&weights, config.neighborhood_size)?;
    let mut pop: Vec<Subproblem> = weights
        .into_iter()
        .zip(table)
        .zip(initial)
        .map(|((weight, neighbors), solution)| Subproblem {
            weight,
            neighbors,
            solution,
        })
        .collect();

    let pm = config
        .mutation_probability
        .unwrap_or(1.0 / problem.n() as f64);
    let mut archive = Archive::new(config.archive_factor);
    let (mut applied, mut skipped) = (0, 0);

    for g in 0..config.max_generations {
        for i in 0..n_pop {
            let neighbor_table: Vec<&[usize]> =
                pop.iter().map(|s| s.neighbors.as_slice()).collect();
            let pool = if rng.uniform() < config.delta {
                neighbor_table[i].to_vec()
            } else {
                (0..n_pop).collect()
            };
            let xs: Vec<&[f64]> = pop.iter().map(|s| s.solution.x.as_slice()).collect();
            let trial = de_crossover(
                i,
                &pool,
                &xs,
                config.f,
                config.cr,
                &bounds,
                config.repair,
                &mut rng,
            )?;
            let child = polynomial_mutation(&trial, pm, config.eta_m, &bounds, &mut rng);
            let child = evaluate(child)?;
            z_star.observe(&child.f)?;
            replace(&child, pool, &mut pop, config.nr, &z_star, &mut rng);
            archive.insert(&child);
        }
        archive.trim(n_pop, config.trim_policy);

        let mut outcome = AdaptationOutcome::NotScheduled;
        if config.adapts_at(g) {
            let reduced = remove_overcrowded(pop.clone(), config.nus)?;
            match add_subproblems(reduced, &archive, config.nus, &z_star) {
                Ok(mut next) => {
                    let ws: Vec<WeightVector> = next.iter().map(|s| s.weight.clone()).collect();
                    for (s, nb) in next
                        .iter_mut()
                        .zip(neighborhoods(&ws, config.neighborhood_size)?)
                    {
                        s.neighbors = nb;
                    }
                    pop = next;
                    applied += 1;
                    outcome = AdaptationOutcome::Applied;
                }
                Err(Error::NoEligibleArchiveMember) => {
                    log::debug!("generation {g}: no eligible archive member, adaptation skipped");
                    skipped += 1;
                    outcome = AdaptationOutcome::Skipped;
                }
                Err(e) => return Err(e),
            }
        }

        observer(&GenerationView {
            generation: g,
            population: &pop,
            archive: &archive,
            z_star: &z_star,
            adaptation: outcome,
        });
    }

    let objectives: Vec<Vec<f64>> = pop.iter().map(|s| s.solution.f.to_vec()).collect();
    let nominal = NormalizationBounds::new(
        vec![0.0; m],
        (0..m).map(|j| problem.objective_scale(j)).collect(),
    )?;
    let nominal_hv = normalized_hypervolume(&objectives, &nominal)?;
    Ok(RunRecord {
        config: config.clone(),
        problem: problem.clone(),
        generations: config.max_generations,
        weights: pop.iter().map(|s| s.weight.to_vec()).collect(),
        decisions: pop.iter().map(|s| s.solution.x.to_vec()).collect(),
        objectives,
        archive: archive.members().iter().map(|i| i.f.to_vec()).collect(),
        z_star: z_star.to_vec(),
        nominal_hv,
        evaluations,
        adaptations_applied: applied,
        adaptations_skipped: skipped,
        wall_time: start.elapsed(),
    })
}

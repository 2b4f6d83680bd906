//! Batch campaigns: seeded runs over problems × objective counts ×
//! algorithms, written as one record file per run, followed by a report
//! (union-normalized hypervolume, summary statistics) and 2-D scatter plots.

mod plot;
mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use plot::{plot, scatter_svg, PlotOutcome, PlotSelection};
pub use report::{load_campaign, report, HvRow, LoadedRun, Report};

use crate::adaptation::TrimPolicy;
use crate::engine::{run_on, Algorithm, BoundRepair, RunConfig, RunRecord};
use crate::error::{Error, Result};
use crate::problems::{ProblemDef, ProblemId, ShapeRegistry};

pub const MANIFEST_FILE: &str = "manifest.toml";
pub const RECORDS_DIR: &str = "records";

/// The `[campaign]` section: what to run and where.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignSection {
    pub seed: u64,
    pub runs: usize,
    pub problems: Vec<ProblemId>,
    pub objectives: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    pub out: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    /// Shape registry file; the built-in mapping when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shapes: Option<PathBuf>,
}

/// The `[run]` section: overrides of the per-run defaults. Unset fields keep
/// the defaults of [`RunConfig::new`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSettings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub population_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neighborhood_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_generations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nr: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cr: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutation_probability: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ws_transform: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pool_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repair: Option<BoundRepair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trim_policy: Option<TrimPolicy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub archive_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adaptation_period: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adaptation_stop: Option<f64>,
}

impl RunSettings {
    pub fn apply(&self, c: &mut RunConfig) {
        macro_rules! set {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field { c.$field = v; })*
            };
        }
        set!(
            population_size,
            neighborhood_size,
            max_generations,
            nus,
            delta,
            nr,
            cr,
            f,
            eta_m,
            ws_transform,
            pool_size,
            repair,
            trim_policy,
            archive_factor,
            adaptation_period,
            adaptation_stop
        );
        if self.mutation_probability.is_some() {
            c.mutation_probability = self.mutation_probability;
        }
        // The removal count follows the population unless set explicitly.
        if self.population_size.is_some() && self.nus.is_none() {
            c.nus = (0.05 * c.population_size as f64).round() as usize;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub campaign: CampaignSection,
    #[serde(default)]
    pub run: RunSettings,
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub runs: Option<usize>,
    pub problems: Option<Vec<ProblemId>>,
    pub objectives: Option<Vec<usize>>,
    pub algorithms: Option<Vec<Algorithm>>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl CampaignConfig {
    /// A campaign over every variant, m = 2..=6, all four algorithms.
    pub fn new(seed: u64, runs: usize, out: impl Into<PathBuf>) -> Self {
        Self {
            campaign: CampaignSection {
                seed,
                runs,
                problems: ProblemId::VARIANTS.to_vec(),
                objectives: (2..=6).collect(),
                algorithms: Algorithm::ALL.to_vec(),
                out: out.into(),
                jobs: None,
                shapes: None,
            },
            run: RunSettings::default(),
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("campaign config serializes")
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        let c = &mut self.campaign;
        if let Some(v) = o.seed {
            c.seed = v;
        }
        if let Some(v) = o.runs {
            c.runs = v;
        }
        if let Some(v) = &o.problems {
            c.problems = v.clone();
        }
        if let Some(v) = &o.objectives {
            c.objectives = v.clone();
        }
        if let Some(v) = &o.algorithms {
            c.algorithms = v.clone();
        }
        if let Some(v) = &o.out {
            c.out = v.clone();
        }
        if o.jobs.is_some() {
            c.jobs = o.jobs;
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.campaign;
        if c.runs == 0 {
            return Err(Error::Config("runs must be positive".into()));
        }
        if c.problems.is_empty() || c.objectives.is_empty() || c.algorithms.is_empty() {
            return Err(Error::Config(
                "problems, objectives and algorithms must be nonempty".into(),
            ));
        }
        if let Some(m) = c.objectives.iter().find(|&&m| m < 2) {
            return Err(Error::Config(format!("objective count {m} is below 2")));
        }
        if c.jobs == Some(0) {
            return Err(Error::Config("jobs must be positive".into()));
        }
        Ok(())
    }

    pub fn registry(&self) -> Result<ShapeRegistry> {
        match &self.campaign.shapes {
            Some(path) => ShapeRegistry::load(path),
            None => Ok(ShapeRegistry::default()),
        }
    }

    /// Every run of the campaign in problem, m, algorithm, run order.
    pub fn plan(&self) -> Vec<PlannedRun> {
        let c = &self.campaign;
        let mut out = Vec::new();
        for &problem in &c.problems {
            for &m in &c.objectives {
                for &algorithm in &c.algorithms {
                    for run in 0..c.runs {
                        out.push(PlannedRun {
                            problem,
                            m,
                            algorithm,
                            run,
                            seed: run_seed(c.seed, problem, m, algorithm, run),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn run_config(&self, p: &PlannedRun) -> RunConfig {
        let mut config = RunConfig::new(p.problem, p.m, p.algorithm, p.seed);
        self.run.apply(&mut config);
        config
    }
}

/// First eight bytes (little-endian) of SHA-256 over
/// `"{campaign_seed}/{problem}/{m}/{algorithm}/{run}"`.
pub fn run_seed(
    campaign_seed: u64,
    problem: ProblemId,
    m: usize,
    algorithm: Algorithm,
    run: usize,
) -> u64 {
    let digest = Sha256::digest(format!("{campaign_seed}/{problem}/{m}/{algorithm}/{run}"));
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlannedRun {
    pub problem: ProblemId,
    pub m: usize,
    pub algorithm: Algorithm,
    pub run: usize,
    pub seed: u64,
}

impl PlannedRun {
    /// Directory of this run's files, relative to the campaign root.
    pub fn dir(&self) -> PathBuf {
        Path::new(RECORDS_DIR)
            .join(self.problem.name())
            .join(format!("m{}", self.m))
            .join(self.algorithm.name())
    }

    pub fn record_path(&self) -> PathBuf {
        self.dir().join(format!("run_{:03}.json", self.run))
    }

    pub fn timing_path(&self) -> PathBuf {
        self.dir().join(format!("run_{:03}.timing.json", self.run))
    }

    pub fn failure_path(&self) -> PathBuf {
        self.dir().join(format!("run_{:03}.error.txt", self.run))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    #[serde(flatten)]
    pub run: PlannedRun,
    pub record: PathBuf,
}

/// Written next to the records: the resolved config, the crate version and
/// every planned run with its seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: String,
    pub config: CampaignConfig,
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn load(dir: &Path) -> Result<Self> {
        let path = dir.join(MANIFEST_FILE);
        let text = fs::read_to_string(&path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunFailure {
    pub run: PlannedRun,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignSummary {
    pub completed: usize,
    pub failures: Vec<RunFailure>,
}

/// Writes `bytes` to a sibling temporary file and renames it into place.
pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn record_to_json(record: &RunRecord) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("records serialize");
    s.push('\n');
    s
}

/// Runs the whole campaign on a pool of `jobs` workers (all cores by
/// default). A run that fails leaves an error file in place of its record;
/// the others proceed.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignSummary> {
    config.validate()?;
    let registry = config.registry()?;
    let root = &config.campaign.out;
    let plan = config.plan();

    // Problem definitions are checked up front so a bad instance is a
    // configuration error rather than a wall of per-run failures.
    for &problem in &config.campaign.problems {
        for &m in &config.campaign.objectives {
            ProblemDef::new(problem, m, &registry)?;
        }
    }

    fs::create_dir_all(root)?;
    let manifest = Manifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        entries: plan
            .iter()
            .map(|p| ManifestEntry {
                run: p.clone(),
                record: p.record_path(),
            })
            .collect(),
    };
    let manifest_text = toml::to_string(&manifest).map_err(|e| Error::Io(e.to_string()))?;
    write_atomic(&root.join(MANIFEST_FILE), manifest_text.as_bytes())?;

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = config.campaign.jobs {
        builder = builder.num_threads(jobs);
    }
    let pool = builder.build().map_err(|e| Error::Config(e.to_string()))?;

    let done = AtomicUsize::new(0);
    let total = plan.len();
    let outcomes: Vec<Option<RunFailure>> = pool.install(|| {
        plan.par_iter()
            .map(|p| {
                let outcome = execute(config, &registry, root, p);
                let n = done.fetch_add(1, Ordering::Relaxed) + 1;
                log::info!(
                    "[{n}/{total}] {} m={} {} run {}",
                    p.problem,
                    p.m,
                    p.algorithm,
                    p.run
                );
                outcome.err().map(|e| RunFailure {
                    run: p.clone(),
                    message: e.to_string(),
                })
            })
            .collect()
    });
    let failures: Vec<RunFailure> = outcomes.into_iter().flatten().collect();
    for f in &failures {
        let _ = write_atomic(
            &root.join(f.run.failure_path()),
            format!("{}\n", f.message).as_bytes(),
        );
    }
    Ok(CampaignSummary {
        completed: total - failures.len(),
        failures,
    })
}

fn execute(
    config: &CampaignConfig,
    registry: &ShapeRegistry,
    root: &Path,
    p: &PlannedRun,
) -> Result<()> {
    let problem = ProblemDef::new(p.problem, p.m, registry)?;
    let record = run_on(&config.run_config(p), &problem, |_| {})?;
    write_atomic(
        &root.join(p.record_path()),
        record_to_json(&record).as_bytes(),
    )?;
    let timing = serde_json::json!({ "wall_time_secs": record.wall_time.as_secs_f64() });
    write_atomic(
        &root.join(p.timing_path()),
        format!("{timing}\n").as_bytes(),
    )?;
    let stale = root.join(p.failure_path());
    if stale.exists() {
        fs::remove_file(stale)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
[campaign]
seed = 7
runs = 3
problems = ["WFG41", "WFG45"]
objectives = [2, 3]
algorithms = ["UR", "URAW"]
out = "out"

[run]
max_generations = 50
trim_policy = "lowest_sparsity"
"#;

    #[test]
    fn config_parses_and_applies() {
        let c = CampaignConfig::from_toml_str(SAMPLE).unwrap();
        assert_eq!(c.plan().len(), 2 * 2 * 2 * 3);
        let p = &c.plan()[0];
        let rc = c.run_config(p);
        assert_eq!(rc.max_generations, 50);
        assert_eq!(rc.trim_policy, TrimPolicy::LowestSparsity);
        assert_eq!(rc.population_size, 120);
        assert_eq!(rc.seed, p.seed);
    }

    #[test]
    fn config_round_trips() {
        let c = CampaignConfig::from_toml_str(SAMPLE).unwrap();
        assert_eq!(
            CampaignConfig::from_toml_str(&c.to_toml_string()).unwrap(),
            c
        );
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(CampaignConfig::from_toml_str(&SAMPLE.replace("runs = 3", "runs = 0")).is_err());
        assert!(CampaignConfig::from_toml_str(&SAMPLE.replace("[2, 3]", "[1]")).is_err());
        assert!(
            CampaignConfig::from_toml_str(&SAMPLE.replace("max_generations", "max_gens")).is_err()
        );
        assert!(CampaignConfig::from_toml_str(&SAMPLE.replace("WFG45", "ZDT1")).is_err());
    }

    #[test]
    fn overrides_take_precedence() {
        let mut c = CampaignConfig::from_toml_str(SAMPLE).unwrap();
        c.apply(&Overrides {
            runs: Some(1),
            problems: Some(vec![ProblemId::WFG42]),
            objectives: Some(vec![2]),
            ..Default::default()
        })
        .unwrap();
        assert_eq!(c.plan().len(), 2);
    }

    #[test]
    fn seeds_depend_on_every_coordinate() {
        let base = run_seed(1, ProblemId::WFG41, 2, Algorithm::UniformRandom, 0);
        assert_eq!(
            base,
            run_seed(1, ProblemId::WFG41, 2, Algorithm::UniformRandom, 0)
        );
        let variants = [
            run_seed(2, ProblemId::WFG41, 2, Algorithm::UniformRandom, 0),
            run_seed(1, ProblemId::WFG42, 2, Algorithm::UniformRandom, 0),
            run_seed(1, ProblemId::WFG41, 3, Algorithm::UniformRandom, 0),
            run_seed(1, ProblemId::WFG41, 2, Algorithm::DasDennis, 0),
            run_seed(1, ProblemId::WFG41, 2, Algorithm::UniformRandom, 1),
        ];
        assert!(variants.iter().all(|&s| s != base));
    }

    #[test]
    fn layout() {
        let p = PlannedRun {
            problem: ProblemId::WFG43,
            m: 3,
            algorithm: Algorithm::AdaptiveUniformRandom,
            run: 7,
            seed: 0,
        };
        assert_eq!(
            p.record_path(),
            Path::new("records/WFG43/m3/URAW/run_007.json")
        );
    }
}

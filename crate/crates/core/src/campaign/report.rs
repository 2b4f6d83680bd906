use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{write_atomic, Manifest, PlannedRun};
use crate::engine::{Algorithm, RunRecord};
use crate::error::{Error, Result};
use crate::metrics::{normalized_hypervolume, NormalizationBounds};
use crate::problems::ProblemId;
use crate::stats::{summarize, InstanceSamples, SummaryTable};

/// A completed run read back from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedRun {
    pub run: PlannedRun,
    pub objectives: Vec<Vec<f64>>,
}

/// Reads the manifest under `dir` and every record it lists. Returns the
/// manifest, the runs found, and the planned runs whose record is absent.
pub fn load_campaign(dir: &Path) -> Result<(Manifest, Vec<LoadedRun>, Vec<PlannedRun>)> {
    let manifest = Manifest::load(dir)?;
    let mut found = Vec::new();
    let mut missing = Vec::new();
    for entry in &manifest.entries {
        let path = dir.join(&entry.record);
        match fs::read_to_string(&path) {
            Ok(text) => {
                let record: RunRecord = serde_json::from_str(&text)
                    .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
                found.push(LoadedRun {
                    run: entry.run.clone(),
                    objectives: record.objectives,
                });
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => missing.push(entry.run.clone()),
            Err(e) => return Err(Error::Io(format!("{}: {e}", path.display()))),
        }
    }
    Ok((manifest, found, missing))
}

/// One line of the per-run CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HvRow {
    pub problem: ProblemId,
    pub m: usize,
    pub algorithm: Algorithm,
    pub run: usize,
    pub seed: u64,
    pub hv: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub rows: Vec<HvRow>,
    pub summary: SummaryTable,
    /// Planned runs without a record.
    pub missing: Vec<PlannedRun>,
    /// Instances left out of the summary, with the reason.
    pub skipped: Vec<(ProblemId, usize, String)>,
}

/// Hypervolume per run under the union normalization of its instance, and
/// the summary over instances with at least two algorithms.
pub fn report(dir: &Path, alpha: f64) -> Result<Report> {
    let (_, runs, missing) = load_campaign(dir)?;
    let mut instances: BTreeMap<(ProblemId, usize), Vec<&LoadedRun>> = BTreeMap::new();
    for r in &runs {
        instances
            .entry((r.run.problem, r.run.m))
            .or_default()
            .push(r);
    }

    let mut rows = Vec::new();
    let mut summary_rows = Vec::new();
    let mut skipped = Vec::new();
    for ((problem, m), members) in instances {
        let bounds = match NormalizationBounds::from_union(
            members.iter().map(|r| r.objectives.as_slice()),
        ) {
            Ok(b) => b,
            Err(e) => {
                skipped.push((problem, m, e.to_string()));
                continue;
            }
        };
        let mut by_alg: BTreeMap<Algorithm, Vec<f64>> = BTreeMap::new();
        let mut instance_rows = Vec::new();
        for r in &members {
            let hv = normalized_hypervolume(&r.objectives, &bounds)?;
            by_alg.entry(r.run.algorithm).or_default().push(hv);
            instance_rows.push(HvRow {
                problem,
                m,
                algorithm: r.run.algorithm,
                run: r.run.run,
                seed: r.run.seed,
                hv,
            });
        }
        rows.extend(instance_rows);
        if by_alg.len() < 2 {
            skipped.push((problem, m, "fewer than two algorithms have records".into()));
            continue;
        }
        let samples = InstanceSamples {
            problem: problem.to_string(),
            m,
            algorithms: by_alg
                .into_iter()
                .map(|(a, v)| (a.to_string(), v))
                .collect(),
        };
        summary_rows.extend(summarize(&[samples], alpha)?.rows);
    }
    Ok(Report {
        rows,
        summary: SummaryTable {
            alpha,
            rows: summary_rows,
        },
        missing,
        skipped,
    })
}

impl Report {
    /// Per-run CSV with columns `problem,m,algorithm,run,seed,hv`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes `hv.csv`, `summary.csv` and `summary.txt` into `dir` and
    /// returns their paths.
    pub fn write_files(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        let mut hv = Vec::new();
        self.write_csv(&mut hv)?;
        let mut summary = Vec::new();
        self.summary.write_csv(&mut summary)?;
        let files = [
            ("hv.csv", hv),
            ("summary.csv", summary),
            ("summary.txt", self.summary.to_text().into_bytes()),
        ];
        let mut paths = Vec::new();
        for (name, bytes) in files {
            let path = dir.join(name);
            write_atomic(&path, &bytes)?;
            paths.push(path);
        }
        Ok(paths)
    }
}

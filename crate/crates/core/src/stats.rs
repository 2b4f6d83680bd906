//! Two-sample Wilcoxon rank-sum test and per-instance summary tables.

use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Pooled sizes up to this use the exact null distribution.
pub const EXACT_MAX_POOLED: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankSumMethod {
    /// Exact when the pooled size is at most [`EXACT_MAX_POOLED`].
    Auto,
    Exact,
    /// Normal approximation with tie and continuity corrections.
    Normal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankSumTest {
    /// Sum of the midranks of the first sample.
    pub statistic: f64,
    /// Expected statistic under the null, `n_a (n_a + n_b + 1) / 2`.
    pub expected: f64,
    pub p_value: f64,
    pub reject: bool,
    pub method: RankSumMethod,
}

impl RankSumTest {
    /// Whether the first sample tends to hold the larger values.
    pub fn first_is_larger(&self) -> bool {
        self.statistic > self.expected
    }
}

/// Midranks (1-based) of `pooled`, and the sizes of its tie groups.
pub fn midranks(pooled: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&i, &j| pooled[i].total_cmp(&pooled[j]));
    let mut ranks = vec![0.0; pooled.len()];
    let mut ties = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && pooled[order[end]] == pooled[order[start]] {
            end += 1;
        }
        // Positions start..end hold ranks start+1 ..= end.
        let rank = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = rank;
        }
        ties.push(end - start);
        start = end;
    }
    (ranks, ties)
}

/// Two-sided rank-sum test; rejects when `p < alpha`.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64], alpha: f64) -> Result<RankSumTest> {
    wilcoxon_rank_sum_with(a, b, alpha, RankSumMethod::Auto)
}

pub fn wilcoxon_rank_sum_with(
    a: &[f64],
    b: &[f64],
    alpha: f64,
    method: RankSumMethod,
) -> Result<RankSumTest> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::Precondition(format!(
            "rank-sum test needs at least 2 values per sample, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(Error::Input("NaN in rank-sum sample".into()));
    }
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, ties) = midranks(&pooled);
    let na = a.len();
    let n = pooled.len();
    let statistic: f64 = ranks[..na].iter().sum();
    let expected = na as f64 * (n + 1) as f64 / 2.0;

    let method = match method {
        RankSumMethod::Auto if n <= EXACT_MAX_POOLED => RankSumMethod::Exact,
        RankSumMethod::Auto => RankSumMethod::Normal,
        other => other,
    };
    let p_value = match method {
        RankSumMethod::Exact => exact_p_value(&ranks, na),
        _ => normal_p_value(statistic, expected, na, n - na, &ties),
    };
    Ok(RankSumTest {
        statistic,
        expected,
        p_value,
        reject: p_value < alpha,
        method,
    })
}

/// `P(|W - E W| >= |w - E W|)` over all equally likely assignments of the
/// pooled ranks to the first sample. Doubled ranks are integers even with
/// ties, so the distribution is counted exactly.
fn exact_p_value(ranks: &[f64], na: usize) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let total: usize = doubled.iter().sum();
    let observed: i64 = doubled[..na].iter().sum::<usize>() as i64;
    let n = ranks.len();
    let center = (na * (n + 1)) as i64;

    // counts[k][s]: subsets of size k with doubled rank sum s.
    let mut counts = vec![vec![0f64; total + 1]; na + 1];
    counts[0][0] = 1.0;
    for &r in &doubled {
        for k in (1..=na).rev() {
            for s in (r..=total).rev() {
                let add = counts[k - 1][s - r];
                if add != 0.0 {
                    counts[k][s] += add;
                }
            }
        }
    }
    let all: f64 = counts[na].iter().sum();
    let cutoff = (observed - center).abs();
    let extreme: f64 = counts[na]
        .iter()
        .enumerate()
        .filter(|(s, _)| (*s as i64 - center).abs() >= cutoff)
        .map(|(_, c)| c)
        .sum();
    (extreme / all).min(1.0)
}

fn normal_p_value(statistic: f64, expected: f64, na: usize, nb: usize, ties: &[usize]) -> f64 {
    let n = (na + nb) as f64;
    let tie_term: f64 = ties
        .iter()
        .map(|&t| {
            let t = t as f64;
            t * t * t - t
        })
        .sum();
    let variance = na as f64 * nb as f64 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if variance <= 0.0 {
        return 1.0;
    }
    let deviation = ((statistic - expected).abs() - 0.5).max(0.0);
    let z = deviation / variance.sqrt();
    let normal = Normal::standard();
    (2.0 * (1.0 - normal.cdf(z))).min(1.0)
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample standard deviation (n - 1 denominator); `None` for fewer than two
/// values.
pub fn sample_sd(values: &[f64]) -> Option<f64> {
    if values.len() < 2 {
        return None;
    }
    let mu = mean(values);
    let ss: f64 = values.iter().map(|v| (v - mu) * (v - mu)).sum();
    Some((ss / (values.len() - 1) as f64).sqrt())
}

/// Median, averaging the middle pair for even counts.
pub fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// HV samples of every algorithm on one (problem, objective count) instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSamples {
    pub problem: String,
    pub m: usize,
    pub algorithms: Vec<(String, Vec<f64>)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub problem: String,
    pub m: usize,
    pub algorithm: String,
    pub runs: usize,
    pub mean: f64,
    /// Zero when `sd_defined` is false.
    pub sd: f64,
    pub sd_defined: bool,
    pub best: f64,
    pub median: f64,
    pub highest_mean: bool,
    /// Significantly better than every other algorithm on this instance.
    pub star: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryTable {
    pub alpha: f64,
    pub rows: Vec<SummaryRow>,
}

/// Mean, sample sd, best (largest) and median per algorithm and instance.
/// Every instance must cover the same algorithms, in the same order.
pub fn summarize(instances: &[InstanceSamples], alpha: f64) -> Result<SummaryTable> {
    let Some(first) = instances.first() else {
        return Ok(SummaryTable {
            alpha,
            rows: Vec::new(),
        });
    };
    let names: Vec<&str> = first.algorithms.iter().map(|(n, _)| n.as_str()).collect();
    let mut rows = Vec::new();
    for inst in instances {
        let these: Vec<&str> = inst.algorithms.iter().map(|(n, _)| n.as_str()).collect();
        if these != names {
            return Err(Error::Input(format!(
                "{} m={} covers {these:?}, expected {names:?}",
                inst.problem, inst.m
            )));
        }
        if let Some((name, _)) = inst.algorithms.iter().find(|(_, v)| v.is_empty()) {
            return Err(Error::Input(format!(
                "{} m={}: no samples for {name}",
                inst.problem, inst.m
            )));
        }
        let means: Vec<f64> = inst.algorithms.iter().map(|(_, v)| mean(v)).collect();
        let top = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for (idx, (name, values)) in inst.algorithms.iter().enumerate() {
            let sd = sample_sd(values);
            rows.push(SummaryRow {
                problem: inst.problem.clone(),
                m: inst.m,
                algorithm: name.clone(),
                runs: values.len(),
                mean: means[idx],
                sd: sd.unwrap_or(0.0),
                sd_defined: sd.is_some(),
                best: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                median: median(values),
                highest_mean: means[idx] == top,
                star: significantly_best(inst, idx, alpha)?,
            });
        }
    }
    Ok(SummaryTable { alpha, rows })
}

fn significantly_best(inst: &InstanceSamples, idx: usize, alpha: f64) -> Result<bool> {
    if inst.algorithms.len() < 2 {
        return Ok(false);
    }
    let mine = &inst.algorithms[idx].1;
    if mine.len() < 2 {
        return Ok(false);
    }
    for (other_idx, (_, theirs)) in inst.algorithms.iter().enumerate() {
        if other_idx == idx {
            continue;
        }
        if theirs.len() < 2 {
            return Ok(false);
        }
        let test = wilcoxon_rank_sum(mine, theirs, alpha)?;
        if !(test.reject && test.first_is_larger()) {
            return Ok(false);
        }
    }
    Ok(true)
}

impl SummaryTable {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::Input(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::Input(e.to_string()))?;
        Ok(())
    }

    /// Aligned text: one block per instance, `*` marks the highest mean and
    /// `★` a significant win over every other algorithm.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<8} {:>2} {:<6} {:>5} {:>10} {:>10} {:>10} {:>10}  marks",
            "problem", "m", "alg", "runs", "mean", "sd", "best", "median"
        );
        let mut last: Option<(&str, usize)> = None;
        for r in &self.rows {
            if last.is_some_and(|l| l != (r.problem.as_str(), r.m)) {
                s.push('\n');
            }
            last = Some((r.problem.as_str(), r.m));
            let sd = if r.sd_defined {
                format!("{:.3e}", r.sd)
            } else {
                "n/a".to_string()
            };
            let mut marks = String::new();
            if r.highest_mean {
                marks.push('*');
            }
            if r.star {
                marks.push('★');
            }
            let _ = writeln!(
                s,
                "{:<8} {:>2} {:<6} {:>5} {:>10.4} {:>10} {:>10.4} {:>10.4}  {}",
                r.problem, r.m, r.algorithm, r.runs, r.mean, sd, r.best, r.median, marks
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midranks_average_ties() {
        let (r, ties) = midranks(&[3.0, 1.0, 3.0, 2.0]);
        assert_eq!(r, vec![3.5, 1.0, 3.5, 2.0]);
        assert_eq!(ties, vec![1, 1, 2]);
    }

    #[test]
    fn identical_samples_do_not_reject() {
        let a = [0.3, 0.5, 0.7, 0.9];
        let t = wilcoxon_rank_sum(&a, &a, 0.05).unwrap();
        assert!((t.p_value - 1.0).abs() < 1e-12);
        assert!(!t.reject);
    }

    #[test]
    fn full_separation_rejects() {
        let a: Vec<f64> = (1..=10).map(f64::from).collect();
        let b: Vec<f64> = (11..=20).map(f64::from).collect();
        let t = wilcoxon_rank_sum(&a, &b, 0.05).unwrap();
        assert_eq!(t.method, RankSumMethod::Exact);
        assert!(t.reject);
        // Only the two fully separated assignments are as extreme.
        assert!((t.p_value - 2.0 / 184_756.0).abs() < 1e-15);
    }

    #[test]
    fn all_tied_gives_p_one() {
        let a = [1.0; 15];
        let t = wilcoxon_rank_sum_with(&a, &a, 0.05, RankSumMethod::Normal).unwrap();
        assert_eq!(t.p_value, 1.0);
    }

    #[test]
    fn small_samples_are_rejected() {
        assert!(wilcoxon_rank_sum(&[1.0], &[1.0, 2.0], 0.05).is_err());
        assert!(wilcoxon_rank_sum(&[], &[1.0, 2.0], 0.05).is_err());
    }

    #[test]
    fn moments_match_closed_form() {
        let v = [2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0];
        assert_eq!(mean(&v), 5.0);
        // Sum of squared deviations is 32, so sd = sqrt(32 / 7).
        assert!((sample_sd(&v).unwrap() - (32.0f64 / 7.0).sqrt()).abs() < 1e-12);
        assert_eq!(median(&v), 4.5);
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(sample_sd(&[1.0]), None);
    }

    fn inst(algs: &[(&str, &[f64])]) -> InstanceSamples {
        InstanceSamples {
            problem: "WFG41".into(),
            m: 2,
            algorithms: algs
                .iter()
                .map(|(n, v)| (n.to_string(), v.to_vec()))
                .collect(),
        }
    }

    #[test]
    fn single_run_summary() {
        let table = summarize(&[inst(&[("UR", &[0.6]), ("URAW", &[0.7])])], 0.05).unwrap();
        let r = &table.rows[1];
        assert_eq!((r.mean, r.best, r.median), (0.7, 0.7, 0.7));
        assert_eq!(r.sd, 0.0);
        assert!(!r.sd_defined);
        assert!(r.highest_mean);
        assert!(!r.star);
    }

    #[test]
    fn dominating_algorithm_gets_the_star() {
        let low: Vec<f64> = (0..10).map(|i| 0.5 + i as f64 * 1e-3).collect();
        let mid: Vec<f64> = (0..10).map(|i| 0.6 + i as f64 * 1e-3).collect();
        let high: Vec<f64> = (0..10).map(|i| 0.7 + i as f64 * 1e-3).collect();
        let table = summarize(
            &[inst(&[("DD", &low), ("UR", &mid), ("URAW", &high)])],
            0.05,
        )
        .unwrap();
        let stars: Vec<bool> = table.rows.iter().map(|r| r.star).collect();
        assert_eq!(stars, vec![false, false, true]);
    }

    #[test]
    fn equal_samples_get_no_star() {
        let v = [0.5, 0.6, 0.7];
        let table = summarize(&[inst(&[("UR", &v), ("URAW", &v)])], 0.05).unwrap();
        assert!(table.rows.iter().all(|r| !r.star));
    }

    #[test]
    fn coverage_mismatch_is_an_input_error() {
        let a = inst(&[("UR", &[0.5]), ("URAW", &[0.6])]);
        let b = InstanceSamples {
            problem: "WFG42".into(),
            m: 2,
            algorithms: vec![("UR".into(), vec![0.5])],
        };
        assert!(matches!(summarize(&[a, b], 0.05), Err(Error::Input(_))));
    }

    #[test]
    fn text_and_csv_render() {
        let table = summarize(
            &[inst(&[("UR", &[0.6, 0.61]), ("URAW", &[0.7, 0.71])])],
            0.05,
        )
        .unwrap();
        let text = table.to_text();
        assert!(text.contains("URAW"));
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let csv = String::from_utf8(buf).unwrap();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.starts_with("problem,m,algorithm,runs,mean,sd,sd_defined,best,median"));
    }
}

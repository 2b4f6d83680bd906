mod common;

use moead_uraw::stats::{
    mean, median, sample_sd, summarize, wilcoxon_rank_sum, wilcoxon_rank_sum_with, InstanceSamples,
    RankSumMethod,
};
use moead_uraw::RngStream;

fn draw(n: usize, offset: f64, rng: &mut RngStream) -> Vec<f64> {
    (0..n).map(|_| offset + rng.uniform()).collect()
}

#[test]
fn exact_matches_exhaustive_enumeration() {
    let mut rng = RngStream::new(31, 0);
    for na in 2..=8 {
        for nb in 2..=8 {
            for _ in 0..3 {
                let a = draw(na, 0.2, &mut rng);
                let b = draw(nb, 0.0, &mut rng);
                let got = wilcoxon_rank_sum_with(&a, &b, 0.05, RankSumMethod::Exact).unwrap();
                let want = common::exhaustive_rank_sum_p(&a, &b);
                assert!(
                    (got.p_value - want).abs() < 1e-10,
                    "{na}x{nb}: {} vs {want}",
                    got.p_value
                );
            }
        }
    }
}

#[test]
fn exact_matches_enumeration_with_ties() {
    let mut rng = RngStream::new(32, 0);
    for _ in 0..50 {
        // Values on a coarse grid force ties.
        let a: Vec<f64> = (0..6).map(|_| (rng.uniform() * 4.0).floor()).collect();
        let b: Vec<f64> = (0..7).map(|_| (rng.uniform() * 4.0).floor()).collect();
        let got = wilcoxon_rank_sum_with(&a, &b, 0.05, RankSumMethod::Exact).unwrap();
        let want = common::exhaustive_rank_sum_p(&a, &b);
        assert!((got.p_value - want).abs() < 1e-10);
    }
}

#[test]
fn full_separation_rejects() {
    let a: Vec<f64> = (1..=10).map(f64::from).collect();
    let b: Vec<f64> = (11..=20).map(f64::from).collect();
    let t = wilcoxon_rank_sum(&a, &b, 0.05).unwrap();
    // Only the two fully separated assignments are as extreme: 2 / C(20, 10).
    assert!((t.p_value - 2.0 / 184_756.0).abs() < 1e-15);
    assert!(t.reject && !t.first_is_larger());
}

#[test]
fn identical_samples_do_not_reject() {
    let a = [0.5, 0.6, 0.7, 0.8];
    let t = wilcoxon_rank_sum(&a, &a, 0.05).unwrap();
    assert!(!t.reject);
    assert!((t.p_value - 1.0).abs() < 1e-12);
}

#[test]
fn invariant_under_monotone_transforms() {
    let mut rng = RngStream::new(33, 0);
    for _ in 0..50 {
        let a = draw(9, 0.1, &mut rng);
        let b = draw(8, 0.0, &mut rng);
        let p = wilcoxon_rank_sum(&a, &b, 0.05).unwrap().p_value;
        let ta: Vec<f64> = a.iter().map(|v| v.exp() * 3.0 - 1.0).collect();
        let tb: Vec<f64> = b.iter().map(|v| v.exp() * 3.0 - 1.0).collect();
        assert_eq!(wilcoxon_rank_sum(&ta, &tb, 0.05).unwrap().p_value, p);
    }
}

#[test]
fn symmetric_in_sample_order() {
    let mut rng = RngStream::new(34, 0);
    for method in [RankSumMethod::Exact, RankSumMethod::Normal] {
        for _ in 0..50 {
            let a = draw(7, 0.1, &mut rng);
            let b = draw(9, 0.0, &mut rng);
            let ab = wilcoxon_rank_sum_with(&a, &b, 0.05, method).unwrap();
            let ba = wilcoxon_rank_sum_with(&b, &a, 0.05, method).unwrap();
            assert!((ab.p_value - ba.p_value).abs() < 1e-12);
            assert_eq!(ab.reject, ba.reject);
        }
    }
}

#[test]
fn normal_approximation_tracks_exact() {
    let mut rng = RngStream::new(35, 0);
    for _ in 0..100 {
        let a = draw(10, 0.15, &mut rng);
        let b = draw(10, 0.0, &mut rng);
        let exact = wilcoxon_rank_sum_with(&a, &b, 0.05, RankSumMethod::Exact).unwrap();
        let normal = wilcoxon_rank_sum_with(&a, &b, 0.05, RankSumMethod::Normal).unwrap();
        assert!((exact.p_value - normal.p_value).abs() < 0.01);
    }
}

/// Reference values from scipy's asymptotic Mann–Whitney test with tie and
/// continuity corrections. The tolerance covers differences between normal
/// CDF implementations.
#[test]
fn normal_approximation_matches_reference() {
    let a = [
        0.61, 0.62, 0.64, 0.60, 0.66, 0.63, 0.65, 0.62, 0.67, 0.61, 0.64, 0.63,
    ];
    let b = [
        0.59, 0.60, 0.62, 0.58, 0.61, 0.60, 0.63, 0.57, 0.60, 0.62, 0.59, 0.61,
    ];
    let t = wilcoxon_rank_sum_with(&a, &b, 0.05, RankSumMethod::Normal).unwrap();
    assert!((t.p_value - 0.0024781516189005142).abs() < 1e-9);

    let a = [1.0, 2.0, 2.0, 3.0, 3.0, 3.0, 4.0, 5.0, 5.0, 6.0, 7.0, 8.0];
    let b = [
        2.0, 3.0, 4.0, 4.0, 5.0, 6.0, 6.0, 7.0, 8.0, 9.0, 9.0, 10.0, 11.0,
    ];
    let t = wilcoxon_rank_sum(&a, &b, 0.05).unwrap();
    assert_eq!(t.method, RankSumMethod::Normal);
    assert!((t.p_value - 0.037658551886834625).abs() < 1e-9);
}

#[test]
fn summary_moments_match_closed_form() {
    // Mean 3, sample variance 2.5 for 1..=5.
    let v = [1.0, 2.0, 3.0, 4.0, 5.0];
    assert!((mean(&v) - 3.0).abs() < 1e-12);
    assert!((sample_sd(&v).unwrap() - 2.5f64.sqrt()).abs() < 1e-12);
    assert_eq!(median(&v), 3.0);
    assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), 2.5);
    assert_eq!(sample_sd(&[1.0]), None);
}

#[test]
fn stars_need_a_significant_win_over_everyone() {
    let low: Vec<f64> = (0..10).map(|i| i as f64 * 0.01).collect();
    let mid: Vec<f64> = (0..10).map(|i| 1.0 + i as f64 * 0.01).collect();
    let high: Vec<f64> = (0..10).map(|i| 2.0 + i as f64 * 0.01).collect();
    let inst = InstanceSamples {
        problem: "P".into(),
        m: 2,
        algorithms: vec![
            ("A".into(), low),
            ("B".into(), mid.clone()),
            ("C".into(), high),
        ],
    };
    let t = summarize(&[inst], 0.05).unwrap();
    let stars: Vec<bool> = t.rows.iter().map(|r| r.star).collect();
    assert_eq!(stars, vec![false, false, true]);
    assert!(t.rows[2].highest_mean);

    let tie = InstanceSamples {
        problem: "P".into(),
        m: 2,
        algorithms: vec![("A".into(), mid.clone()), ("B".into(), mid)],
    };
    let t = summarize(&[tie], 0.05).unwrap();
    assert!(t.rows.iter().all(|r| !r.star));
}

#[test]
fn single_run_has_undefined_spread() {
    let inst = InstanceSamples {
        problem: "P".into(),
        m: 3,
        algorithms: vec![("A".into(), vec![0.4]), ("B".into(), vec![0.5])],
    };
    let t = summarize(&[inst], 0.05).unwrap();
    assert!(t
        .rows
        .iter()
        .all(|r| !r.sd_defined && r.sd == 0.0 && !r.star));
    assert!(t.rows[1].highest_mean);
}

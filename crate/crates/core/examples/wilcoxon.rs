//! Rank-sum tests and the per-instance summary with significance marks.
//!
//! cargo run --example wilcoxon

use moead_uraw::stats::{summarize, wilcoxon_rank_sum_with, InstanceSamples, RankSumMethod};
use moead_uraw::RngStream;

fn main() -> moead_uraw::Result<()> {
    let mut rng = RngStream::new(4, 0);
    let mut sample = |n: usize, shift: f64| -> Vec<f64> {
        (0..n).map(|_| 0.6 + shift + 0.01 * rng.uniform()).collect()
    };

    let a = sample(8, 0.004);
    let b = sample(8, 0.0);
    for method in [RankSumMethod::Exact, RankSumMethod::Normal] {
        let t = wilcoxon_rank_sum_with(&a, &b, 0.05, method)?;
        println!(
            "{method:?}: W={} (expected {}), p={:.4}, reject={}",
            t.statistic, t.expected, t.p_value, t.reject
        );
    }

    let instance = InstanceSamples {
        problem: "demo".into(),
        m: 2,
        algorithms: vec![
            ("DD".into(), sample(30, 0.0)),
            ("UR".into(), sample(30, 0.001)),
            ("URAW".into(), sample(30, 0.008)),
        ],
    };
    print!("\n{}", summarize(&[instance], 0.05)?.to_text());
    Ok(())
}

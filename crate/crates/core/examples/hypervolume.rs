//! Exact hypervolume against a Monte Carlo estimate, and union normalization
//! of two solution sets.
//!
//! cargo run --release --example hypervolume -- 4

use moead_uraw::metrics::{
    hypervolume, hypervolume_monte_carlo, normalized_hypervolume, NormalizationBounds, HV_REFERENCE,
};
use moead_uraw::RngStream;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(3);
    let mut rng = RngStream::new(3, 0);

    // Points on the positive unit sphere, a concave front.
    let points: Vec<Vec<f64>> = (0..50)
        .map(|_| {
            let v: Vec<f64> = (0..m).map(|_| rng.uniform()).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter().map(|x| x / norm).collect()
        })
        .collect();
    let z = vec![HV_REFERENCE; m];
    let exact = hypervolume(&points, &z)?;
    let (estimate, se) = hypervolume_monte_carlo(&points, &z, 1_000_000, &mut rng)?;
    println!("m={m}: exact {exact:.6}, Monte Carlo {estimate:.6} ± {se:.6}");

    // Two sets on different scales compared under a shared normalization.
    let a: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.iter().map(|v| 2.0 * v).collect())
        .collect();
    let b: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.iter().map(|v| 2.0 * v + 0.1).collect())
        .collect();
    let bounds = NormalizationBounds::from_union([a.as_slice(), b.as_slice()])?;
    println!(
        "normalized: A {:.4}, shifted A {:.4}",
        normalized_hypervolume(&a, &bounds)?,
        normalized_hypervolume(&b, &bounds)?
    );
    Ok(())
}

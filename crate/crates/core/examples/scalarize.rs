//! Tchebycheff scalarization and the weight/direction transform.
//!
//! cargo run --example scalarize

use moead_uraw::scalarize::{inverse_gap_weight, optimal_tch_weight, tchebycheff, ws_transform};
use moead_uraw::WeightVector;

fn main() -> moead_uraw::Result<()> {
    let z = [0.0, 0.0];
    let f = [1.0, 3.0];

    let lambda = WeightVector::new(vec![0.5, 0.5])?;
    println!(
        "g(f | {:?}, z) = {}",
        lambda.as_slice(),
        tchebycheff(&f, &lambda, &z)?
    );

    // The weight along which f is the Tchebycheff optimum, and its direction.
    let direction = optimal_tch_weight(&f, &z)?;
    let weight = inverse_gap_weight(&f, &z)?;
    println!("direction through f:  {:?}", direction.as_slice());
    println!("weight optimal at f:  {:?}", weight.as_slice());
    println!(
        "WS(direction):        {:?}",
        ws_transform(&direction)?.as_slice()
    );
    println!(
        "WS(WS(weight)):       {:?}",
        ws_transform(&ws_transform(&weight)?)?.as_slice()
    );

    // Equal weighted gaps: every term of the max is tied.
    let gaps: Vec<f64> = f
        .iter()
        .zip(&z)
        .zip(weight.iter())
        .map(|((fj, zj), w)| w * (fj - zj))
        .collect();
    println!("weighted gaps at f:   {gaps:?}");

    let edge = WeightVector::new(vec![1.0, 0.0])?;
    println!(
        "WS of a simplex vertex (zero repaired): {:?}",
        ws_transform(&edge)?.as_slice()
    );
    Ok(())
}

//! One adaptation step by hand: sparsity levels, removal of the most crowded
//! subproblems and insertion from the archive.
//!
//! cargo run --example adaptation

use moead_uraw::adaptation::{add_subproblems, remove_overcrowded, sparsity_level, Archive};
use moead_uraw::engine::Subproblem;
use moead_uraw::scalarize::inverse_gap_weight;
use moead_uraw::types::{DecisionVector, Individual, ObjectiveVector};

fn individual(f: [f64; 2]) -> Individual {
    Individual::new(
        DecisionVector::new(vec![]),
        ObjectiveVector::new(f.to_vec()).unwrap(),
    )
}

fn main() -> moead_uraw::Result<()> {
    let z = [0.0, 0.0];
    // A crowded cluster near the f1 axis and a gap in the middle of the front.
    let front = [
        [0.05, 1.0],
        [0.06, 0.98],
        [0.07, 0.97],
        [0.08, 0.96],
        [0.9, 0.3],
        [1.0, 0.05],
    ];
    let pop: Vec<Individual> = front.iter().map(|&f| individual(f)).collect();
    for (ind, f) in pop.iter().zip(&front) {
        println!("{f:?}  sparsity {:.3e}", sparsity_level(ind, &pop, 2)?);
    }

    let subproblems: Vec<Subproblem> = pop
        .iter()
        .map(|ind| {
            Ok(Subproblem {
                weight: inverse_gap_weight(&ind.f, &z)?,
                neighbors: Vec::new(),
                solution: ind.clone(),
            })
        })
        .collect::<moead_uraw::Result<_>>()?;

    let mut ep = Archive::new(2.0);
    for f in [[0.3, 0.8], [0.5, 0.6], [0.7, 0.45], [0.06, 0.99]] {
        ep.insert(&individual(f));
    }

    let kept = remove_overcrowded(subproblems, 2)?;
    println!("\nafter removing 2:");
    for s in &kept {
        println!("  {:?}", s.solution.f.as_slice());
    }
    let grown = add_subproblems(kept, &ep, 2, &z)?;
    println!("after adding 2 from the archive:");
    for s in &grown {
        println!(
            "  {:?}  weight {:?}",
            s.solution.f.as_slice(),
            s.weight.as_slice()
        );
    }
    Ok(())
}

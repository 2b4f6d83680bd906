//! Samples the Pareto front of a WFG4 variant and prints it as CSV.
//!
//! cargo run --example wfg_front -- WFG47 200 > front.csv

use moead_uraw::problems::{ProblemDef, ProblemId, ShapeRegistry};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let id: ProblemId = args.next().as_deref().unwrap_or("WFG41").parse()?;
    let samples: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(100);

    let problem = ProblemDef::new(id, 2, &ShapeRegistry::default())?;
    eprintln!(
        "{id}: n={} (k={}, l={}), shape {:?}",
        problem.n(),
        problem.k,
        problem.l,
        problem.shape
    );

    // Position variables pass through the multimodal shift, so sweeping them
    // visits the front out of order.
    let mut front = Vec::with_capacity(samples);
    for s in 0..samples {
        let t = s as f64 / (samples - 1).max(1) as f64;
        let x = problem.optimal_solution(&vec![t; problem.k])?;
        front.push(problem.evaluate(&x)?.into_inner());
    }
    front.sort_by(|a, b| a[0].total_cmp(&b[0]));
    println!("f1,f2");
    for f in front {
        println!("{:.6},{:.6}", f[0], f[1]);
    }
    Ok(())
}

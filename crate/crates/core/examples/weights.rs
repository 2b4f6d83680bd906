//! The three fixed weight-generation methods side by side.
//!
//! cargo run --example weights -- 3 30

use moead_uraw::problems::{random_solution, ProblemDef, ProblemId, ShapeRegistry};
use moead_uraw::types::{Individual, ReferencePoint};
use moead_uraw::weights::{
    das_dennis, distance_to_set, divisions_for, tsf_weights, uniform_random_weights, WeightSet,
};
use moead_uraw::RngStream;

fn spread(set: &WeightSet) -> (f64, f64) {
    let gaps: Vec<f64> = (0..set.len())
        .map(|i| {
            let others: Vec<_> = set
                .vectors
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, w)| w.clone())
                .collect();
            distance_to_set(&set.vectors[i], &others).unwrap()
        })
        .collect();
    let min = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let max = gaps.iter().copied().fold(0.0, f64::max);
    (min, max)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(30);
    let mut rng = RngStream::new(1, 0);

    let h = divisions_for(m, n)?;
    let dd = das_dennis(m, h)?;
    let ur = uniform_random_weights(n, m, 5000, &mut rng)?;

    let problem = ProblemDef::new(ProblemId::WFG41, m, &ShapeRegistry::default())?;
    let pop: Vec<Individual> = (0..n)
        .map(|_| {
            let x = random_solution(&problem, &mut rng);
            let f = problem.evaluate(&x)?;
            Ok(Individual::new(x, f))
        })
        .collect::<moead_uraw::Result<_>>()?;
    let z = ReferencePoint::from_objectives(pop.iter().map(|i| &i.f))?;
    let tsf = tsf_weights(&pop, z.as_slice(), n)?;

    println!("m={m}, requested N={n} (lattice H={h} gives {})", dd.len());
    println!(
        "{:>4} {:>5} {:>12} {:>12}",
        "", "size", "min gap", "max gap"
    );
    for (name, set) in [("DD", &dd), ("UR", &ur), ("TSF", &tsf)] {
        let (lo, hi) = spread(set);
        println!("{name:>4} {:>5} {lo:>12.5} {hi:>12.5}", set.len());
    }
    println!("\nUR weights:");
    ur.write_text(std::io::stdout().lock())?;
    Ok(())
}

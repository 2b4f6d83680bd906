//! One full-length run of each algorithm on a two-objective problem.
//!
//! cargo run --release --example single_run -- WFG45 7

use moead_uraw::engine::{run, Algorithm, RunConfig};
use moead_uraw::problems::ProblemId;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let problem: ProblemId = args.next().as_deref().unwrap_or("WFG41").parse()?;
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);

    for algorithm in Algorithm::ALL {
        let record = run(&RunConfig::new(problem, 2, algorithm, seed))?;
        println!(
            "{problem} {algorithm:>4}  hv={:.6}  archive={:>3}  adaptations={} (+{} skipped)  {:.2?}",
            record.nominal_hv,
            record.archive.len(),
            record.adaptations_applied,
            record.adaptations_skipped,
            record.wall_time,
        );
    }
    Ok(())
}

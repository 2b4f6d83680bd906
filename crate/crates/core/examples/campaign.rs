//! A small campaign in a scratch directory: runs, report and plots, the same
//! pipeline the command-line tool drives.
//!
//! cargo run --release --example campaign -- /tmp/demo-campaign

use moead_uraw::campaign::{
    plot, report, run_campaign, CampaignConfig, PlotOutcome, PlotSelection,
};
use moead_uraw::problems::ProblemId;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "demo-campaign".into());
    let mut config = CampaignConfig::new(1, 5, &out);
    config.campaign.problems = vec![ProblemId::WFG41, ProblemId::WFG46];
    config.campaign.objectives = vec![2];
    config.run.max_generations = Some(200);
    print!("{}", config.to_toml_string());

    let summary = run_campaign(&config)?;
    println!(
        "\n{} runs completed, {} failed",
        summary.completed,
        summary.failures.len()
    );

    let dir = config.campaign.out.as_path();
    let r = report(dir, 0.05)?;
    r.write_files(&dir.join("report"))?;
    print!("\n{}", r.summary.to_text());

    if let PlotOutcome::Written(files) = plot(dir, &PlotSelection::default(), &dir.join("plots"))? {
        println!("\n{} plots in {}", files.len(), dir.join("plots").display());
    }
    Ok(())
}

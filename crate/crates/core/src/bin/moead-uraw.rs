use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use moead_uraw::campaign::{
    plot, report, run_campaign, CampaignConfig, Overrides, PlotOutcome, PlotSelection,
};
use moead_uraw::engine::Algorithm;
use moead_uraw::problems::ProblemId;
use moead_uraw::Error;

#[derive(Parser)]
#[command(version, about = "Decomposition MOEA campaigns on the WFG4 family")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute every run of a campaign and write one record per run.
    Run(Common),
    /// Union-normalized HV per run, summary statistics and significance marks.
    Report {
        #[command(flatten)]
        common: Common,
        /// Significance level of the rank-sum tests.
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
    },
    /// Scatter plots of the best and median runs (two objectives only).
    Plot(Common),
}

#[derive(Args)]
struct Common {
    /// Campaign config file (TOML).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads; all cores by default.
    #[arg(long)]
    jobs: Option<usize>,
    /// Campaign seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    problems: Option<Vec<ProblemId>>,
    #[arg(long, value_delimiter = ',')]
    objectives: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    algorithms: Option<Vec<Algorithm>>,
    #[arg(long)]
    runs: Option<usize>,
    /// Campaign directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            runs: self.runs,
            problems: self.problems.clone(),
            objectives: self.objectives.clone(),
            algorithms: self.algorithms.clone(),
            out: self.out.clone(),
            jobs: self.jobs,
        }
    }

    fn config(&self) -> Result<CampaignConfig, Error> {
        let mut config = match &self.config {
            Some(path) => CampaignConfig::load(path)?,
            None => CampaignConfig::new(1, 100, "campaign"),
        };
        config.apply(&self.overrides())?;
        Ok(config)
    }

    fn campaign_dir(&self) -> Result<PathBuf, Error> {
        match (&self.out, &self.config) {
            (Some(out), _) => Ok(out.clone()),
            (None, Some(path)) => Ok(CampaignConfig::load(path)?.campaign.out),
            (None, None) => Err(Error::Config("--out or --config is required".into())),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match execute(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Config(_) | Error::Input(_) => 2,
                Error::Unsupported(_) => 3,
                _ => 1,
            })
        }
    }
}

fn execute(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Run(common) => {
            let config = common.config()?;
            let summary = run_campaign(&config)?;
            println!(
                "{} runs completed in {}",
                summary.completed,
                config.campaign.out.display()
            );
            if summary.failures.is_empty() {
                return Ok(ExitCode::SUCCESS);
            }
            for f in &summary.failures {
                eprintln!(
                    "failed: {} m={} {} run {}: {}",
                    f.run.problem, f.run.m, f.run.algorithm, f.run.run, f.message
                );
            }
            Ok(ExitCode::from(4))
        }
        Command::Report { common, alpha } => {
            let dir = common.campaign_dir()?;
            let report = report(&dir, alpha)?;
            for run in &report.missing {
                eprintln!(
                    "missing: {} m={} {} run {}",
                    run.problem, run.m, run.algorithm, run.run
                );
            }
            for (problem, m, why) in &report.skipped {
                eprintln!("skipped {problem} m={m}: {why}");
            }
            let files = report.write_files(&dir.join("report"))?;
            print!("{}", report.summary.to_text());
            print_written(&files);
            Ok(ExitCode::SUCCESS)
        }
        Command::Plot(common) => {
            let dir = common.campaign_dir()?;
            let selection = PlotSelection {
                problems: common.problems,
                objectives: common.objectives,
                algorithms: common.algorithms,
            };
            match plot(&dir, &selection, &dir.join("plots"))? {
                PlotOutcome::Written(files) => print_written(&files),
                PlotOutcome::Empty => println!("nothing matched the selection; no plots written"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_written(files: &[PathBuf]) {
    for f in files {
        println!("wrote {}", Path::new(f).display());
    }
}

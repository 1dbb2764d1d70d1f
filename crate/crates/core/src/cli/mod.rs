//! Scenario configs, JSON reports and the batch runner behind the
//! `affine-induced` binary.

pub mod config;
pub mod report;
pub mod run;
pub mod scenarios;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{CheckName, ScenarioConfig};
pub use report::{config_hash, write_atomic, ScenarioReport};
pub use run::{build, recheck_outcome, run_config, RunOutcome};

#[derive(Debug, Parser)]
#[command(name = "affine-induced", version, about = "Certify induced modules over affine Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    /// Output directory for reports.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for the random parts of the run (overrides the config).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Run the bundled algebra self-test.
    #[arg(long)]
    pub selftest: bool,
    /// List the bundled scenarios.
    #[arg(long)]
    pub list_scenarios: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a scenario config file or a bundled scenario.
    Run { config: String },
}

/// Runs a scenario and writes `<scenario>.json` and `<scenario>.txt`.
/// Returns the outcome and the JSON path.
pub fn execute(mut cfg: ScenarioConfig, out: Option<PathBuf>, seed: Option<u64>) -> crate::Result<(RunOutcome, PathBuf)> {
    if let Some(s) = seed {
        cfg.budgets.seed = s;
    }
    let dir = out.or_else(|| cfg.output.as_ref().map(PathBuf::from)).unwrap_or_else(|| PathBuf::from("reports"));
    let outcome = run_config(&cfg)?;
    let json_path = dir.join(format!("{}.json", cfg.scenario));
    write_atomic(&json_path, &outcome.report.to_json()?)?;
    write_atomic(&dir.join(format!("{}.txt", cfg.scenario)), &outcome.summary())?;
    Ok((outcome, json_path))
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    if cli.list_scenarios {
        for name in scenarios::names() {
            let desc = scenarios::bundled(name).and_then(|c| c.ok()).map(|c| c.description).unwrap_or_default();
            println!("{name:<20} {desc}");
        }
        return 0;
    }
    let target = match (&cli.command, cli.selftest) {
        (Some(Command::Run { config }), false) => config.clone(),
        (None, true) => "selftest".into(),
        (Some(_), true) => {
            eprintln!("error: --selftest cannot be combined with run");
            return 2;
        }
        (None, false) => {
            eprintln!("error: nothing to do (try `run <config>`, --selftest or --list-scenarios)");
            return 2;
        }
    };
    let result = scenarios::load(&target).and_then(|cfg| execute(cfg, cli.out.clone(), cli.seed));
    match result {
        Ok((outcome, path)) => {
            print!("{}", outcome.summary());
            println!("report: {}", path.display());
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

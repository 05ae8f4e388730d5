use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use sr2kit::config::ExperimentSpec;
use sr2kit::harness::{self, RunOptions};
use sr2kit::io;
use sr2kit_core::diagnostics::prune;

/// Environment variable that replaces the config's seed list.
const SEED_ENV: &str = "SR2KIT_SEED";

#[derive(Parser)]
#[command(name = "sr2kit", version, about = "Stochastic proximal quadratic regularization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every (problem, solver, regularizer, seed) cell of a config.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        jobs: Option<usize>,
        /// Validate the config and list the cells without running them.
        #[arg(long)]
        dry_run: bool,
        /// Run with this single seed. Takes precedence over SR2KIT_SEED.
        #[arg(long)]
        seed_override: Option<u64>,
    },
    /// Zero entries of a saved model below each threshold and report sparsity.
    Prune {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<f64>,
    },
    /// Rebuild summary.json from the per-cell outputs of a previous run.
    Report {
        #[arg(long)]
        out: PathBuf,
    },
}

fn env_seed() -> anyhow::Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(s) if !s.trim().is_empty() => {
            let v = s.trim().parse().with_context(|| format!("{SEED_ENV}={s:?} is not a u64"))?;
            Ok(Some(v))
        }
        _ => Ok(None),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match real_main(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn real_main(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Run {
            config,
            out,
            jobs,
            dry_run,
            seed_override,
        } => {
            let mut spec = ExperimentSpec::from_path(&config)?;
            harness::override_seeds(&mut spec, seed_override.or(env_seed()?));
            if dry_run {
                for w in &spec.warnings {
                    println!("warning: {w}");
                }
                let (cells, skipped) = harness::plan(&spec);
                for c in &cells {
                    println!("{}", c.id);
                }
                for s in &skipped {
                    println!("skip {s}");
                }
                println!("{} cells, {} skipped", cells.len(), skipped.len());
                return Ok(());
            }
            let summary = harness::run_experiments(&spec, &RunOptions { out: out.clone(), jobs })?;
            let failed = summary.cells.iter().filter(|c| c.status != "ok").count();
            println!(
                "{} cells ({} failed), {} skipped; summary in {}",
                summary.cells.len(),
                failed,
                summary.skipped.len(),
                out.join("summary.json").display()
            );
        }
        Command::Prune { model, alpha } => {
            let x = io::load_model(&model)?;
            println!("alpha nnz fraction_zero");
            for a in alpha {
                let (pruned, frac) = prune(&x, a);
                let nnz = pruned.iter().filter(|v| **v != 0.0).count();
                println!("{a} {nnz} {frac}");
            }
        }
        Command::Report { out } => {
            let summary = harness::rebuild_summary(&out)?;
            println!("{} cells; summary in {}", summary.cells.len(), out.join("summary.json").display());
        }
    }
    Ok(())
}

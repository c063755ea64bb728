//! `simpeval`: reproducible runs for feature extraction, reference
//! metrics, baselines, model training, and correlation evaluation.
//!
//! Every run parameter lives in one TOML file; the command line picks the
//! subcommand, the config file, and where artifacts go. Each run writes a
//! `manifest.json` recording the SHA-256 of the config bytes, the run
//! seed, and the artifact list, so any artifact traces back to the exact
//! settings that produced it.
//!
//! Exit codes: 0 on success, 2 for usage/config/input errors, 3 for
//! numeric failures (non-finite losses and the like).

mod commands;
mod config;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use simpeval_core::{Error, Result};

use crate::config::RunConfig;

#[derive(Debug, Parser)]
#[command(
    name = "simpeval",
    version,
    about = "Quality estimation for text simplification"
)]
struct Cli {
    /// TOML run configuration (required; all run parameters live there).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory for artifacts; defaults to the config's `out`.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Fold parallelism for cross-validation; defaults to the config's
    /// `jobs`. Never changes results, only speed.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Extract the five linguistic features per input line.
    Features,
    /// Score BLEU and SARI per (source, output, references) record.
    Metrics,
    /// Cross-validate the sentence-length and least-squares baselines.
    Baselines,
    /// Train a quality-estimation model and write its checkpoint.
    Train,
    /// Correlate predictions with labels (qe, complexity, or transfer mode).
    Evaluate,
    /// Split a document into encoder-sized chunks; score it given a checkpoint.
    Chunk,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Features => "features",
            Command::Metrics => "metrics",
            Command::Baselines => "baselines",
            Command::Train => "train",
            Command::Evaluate => "evaluate",
            Command::Chunk => "chunk",
        }
    }
}

/// What every run records about itself, alongside its artifacts.
#[derive(Debug, Serialize)]
struct Manifest<'a> {
    artifacts: &'a [String],
    config_sha256: &'a str,
    seed: u64,
    subcommand: &'a str,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::Numeric(_) => 3,
                _ => 2,
            })
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let config_path = cli
        .config
        .ok_or_else(|| Error::validation("--config <path> is required"))?;
    let (cfg, config_sha256) = RunConfig::load(&config_path)?;

    let out = cli.out.unwrap_or_else(|| cfg.out.clone());
    let jobs = cli.jobs.unwrap_or(cfg.jobs);
    if jobs == 0 {
        return Err(Error::validation("jobs must be at least 1"));
    }
    fs::create_dir_all(&out).map_err(|e| Error::io(&out, e))?;

    let artifacts = match cli.command {
        Command::Features => commands::features(&cfg, &out)?,
        Command::Metrics => commands::metrics(&cfg, &out)?,
        Command::Baselines => commands::baselines(&cfg, &out, jobs)?,
        Command::Train => commands::train(&cfg, &out)?,
        Command::Evaluate => commands::evaluate(&cfg, &out, jobs)?,
        Command::Chunk => commands::chunk(&cfg, &out)?,
    };

    let manifest = Manifest {
        artifacts: &artifacts,
        config_sha256: &config_sha256,
        seed: cfg.seed,
        subcommand: cli.command.name(),
    };
    let manifest_path = out.join("manifest.json");
    let mut body = serde_json::to_string_pretty(&manifest)
        .map_err(|e| Error::validation(format!("serialization: {e}")))?;
    body.push('\n');
    fs::write(&manifest_path, body).map_err(|e| Error::io(&manifest_path, e))?;

    for name in &artifacts {
        eprintln!("wrote {}", out.join(name).display());
    }
    eprintln!("wrote {}", manifest_path.display());
    Ok(())
}

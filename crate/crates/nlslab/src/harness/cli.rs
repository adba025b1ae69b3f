//! Command-line front end.
//!
//! ```text
//! nlslab verify <lemma1|lemma2|lemma3|lemma4|chain|epi|appendix>
//!        --config <path> [--seed N] [--trials N] [--out <path>] [--bits]
//! nlslab sweep --config <path> [--seed N] [--out <path>] [--bits]
//! ```
//!
//! Exit codes: 0 all verdicts pass, 1 at least one check failed, 2 a
//! config or runtime error prevented the run.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use super::config::{Experiment, ExperimentConfig};
use super::report::write_outputs;
use super::run_experiment;

#[derive(Debug, Parser)]
#[command(
    name = "nlslab",
    about = "Verification experiments for the discretized stochastic NLS channel",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
    Chain,
    Epi,
    Appendix,
}

impl VerifyKind {
    fn experiment(self) -> Experiment {
        match self {
            VerifyKind::Lemma1 => Experiment::PowerGrowth,
            VerifyKind::Lemma2 => Experiment::VolumePreservation,
            VerifyKind::Lemma3 => Experiment::EntropyPreservation,
            VerifyKind::Lemma4 => Experiment::ConditionalEntropyBound,
            VerifyKind::Chain => Experiment::ChainReport,
            VerifyKind::Epi => Experiment::EpiSuite,
            VerifyKind::Appendix => Experiment::AppendixSuite,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one verification suite from a JSON config.
    Verify {
        kind: VerifyKind,
        #[arg(long)]
        config: PathBuf,
        /// Override the config's master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the config's trial count.
        #[arg(long)]
        trials: Option<usize>,
        /// Override the config's output base path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report entropies and bounds in bits instead of nats.
        #[arg(long)]
        bits: bool,
    },
    /// Run the mutual-information sweep from a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        bits: bool,
    },
}

fn execute(
    mut cfg: ExperimentConfig,
    expected: Experiment,
    seed: Option<u64>,
    trials: Option<usize>,
    out: Option<PathBuf>,
    bits: bool,
) -> Result<bool, String> {
    if cfg.experiment != expected {
        return Err(format!(
            "config is for experiment `{}` but the command selects `{}`",
            cfg.experiment.token(),
            expected.token()
        ));
    }
    if let Some(seed) = seed {
        cfg.master_seed = seed;
    }
    if let Some(trials) = trials {
        cfg.trials = trials;
    }
    if let Some(out) = out {
        cfg.output_path = Some(out.display().to_string());
    }

    let (report, raw) = run_experiment(&cfg).map_err(|e| e.to_string())?;
    let display = if bits { report.in_bits() } else { report.clone() };

    println!("{} ({})", display.experiment, display.units);
    for line in display.summary_lines() {
        println!("{line}");
    }

    let base = cfg
        .output_path
        .clone()
        .unwrap_or_else(|| format!("reports/{}", cfg.experiment.token()));
    let (json_path, csv_path) =
        write_outputs(&display, &raw, &PathBuf::from(base)).map_err(|e| e.to_string())?;
    println!("report: {}", json_path.display());
    println!("raw:    {}", csv_path.display());

    Ok(report.passed)
}

/// Parse `std::env::args`, run, and return the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify {
            kind,
            config,
            seed,
            trials,
            out,
            bits,
        } => ExperimentConfig::from_file(&config)
            .map_err(|e| e.to_string())
            .and_then(|cfg| execute(cfg, kind.experiment(), seed, trials, out, bits)),
        Command::Sweep {
            config,
            seed,
            out,
            bits,
        } => ExperimentConfig::from_file(&config)
            .map_err(|e| e.to_string())
            .and_then(|cfg| execute(cfg, Experiment::MiBoundSweep, seed, None, out, bits)),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

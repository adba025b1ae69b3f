//! Experiment suite implementations behind [`run_experiment`].

mod appendix_suite;
mod chain_suite;
mod conditional_bound;
mod entropy_preservation;
mod epi_suite;
mod power_growth;
mod sweep;
mod volume;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use super::config::{Experiment, ExperimentConfig};
use super::report::{ExperimentReport, RawTable};
use super::HarnessError;
use crate::grid::Ensemble;
use crate::propagator::{propagate_deterministic, ChannelParams};

pub(crate) type SuiteOutput = (Vec<super::report::Check>, RawTable);
pub(crate) type Tolerances = BTreeMap<String, f64>;

/// Mean and standard error of a sample.
pub(crate) fn mean_stderr(values: &[f64]) -> (f64, f64) {
    let m = values.len() as f64;
    let mean = values.iter().sum::<f64>() / m;
    let var = values
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / (m - 1.0);
    (mean, (var / m).sqrt())
}

/// Apply the deterministic flow to every member, in parallel but in order.
pub(crate) fn propagate_ensemble(
    e: &Ensemble,
    params: &ChannelParams,
) -> Result<Ensemble, HarnessError> {
    let members = e
        .members()
        .par_iter()
        .map(|m| propagate_deterministic(m, params))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ensemble::new(members)?)
}

/// Run the configured experiment, returning the report and the raw table.
pub fn run_experiment(
    cfg: &ExperimentConfig,
) -> Result<(ExperimentReport, RawTable), HarnessError> {
    cfg.validate()?;
    let tol = cfg.resolve_tolerances()?;
    let started = Instant::now();
    let (checks, raw) = match cfg.experiment {
        Experiment::PowerGrowth => power_growth::run(cfg, &tol)?,
        Experiment::VolumePreservation => volume::run(cfg, &tol)?,
        Experiment::EntropyPreservation => entropy_preservation::run(cfg, &tol)?,
        Experiment::ConditionalEntropyBound => conditional_bound::run(cfg, &tol)?,
        Experiment::EpiSuite => epi_suite::run(cfg, &tol)?,
        Experiment::ChainReport => chain_suite::run(cfg, &tol)?,
        Experiment::AppendixSuite => appendix_suite::run(cfg, &tol)?,
        Experiment::MiBoundSweep => sweep::run(cfg, &tol)?,
    };
    let report = ExperimentReport::new(cfg, checks, started.elapsed().as_secs_f64());
    Ok((report, raw))
}

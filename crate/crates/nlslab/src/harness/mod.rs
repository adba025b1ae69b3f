//! Reproducible experiment runner: JSON configs in, JSON reports and CSV
//! raw tables out, with seeded parallel trials whose results do not depend
//! on worker count or scheduling.

pub mod cli;
pub mod config;
mod experiments;
pub mod report;

use thiserror::Error;

pub use config::{ConfigError, Experiment, ExperimentConfig};
pub use experiments::run_experiment;
pub use report::{write_outputs, Check, ExperimentReport, RawTable, Unit, Verdict};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Spectrum(#[from] crate::grid::SpectrumError),
    #[error(transparent)]
    Propagator(#[from] crate::propagator::PropagatorError),
    #[error(transparent)]
    Estimator(#[from] crate::infotheory::EstimatorError),
    #[error(transparent)]
    Discrete(#[from] crate::infotheory::DiscreteError),
    #[error(transparent)]
    Geometry(#[from] crate::infotheory::GeometryError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

//! Entropy, entropy-power, mutual-information estimators and the
//! discrete/geometric inequality toolkit.
//!
//! Differential entropies are handled internally in nats; bit output is a
//! formatting concern (see [`capacity::to_bits`]). A complex `n`-vector is
//! always treated as `2n` real coordinates.

pub mod capacity;
pub mod chain;
pub mod conditional;
pub mod discrete;
pub mod entropy_power;
pub mod gaussian;
pub mod geometry;
pub mod knn;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::SpectrumError;

pub use capacity::{capacity_bound, to_bits};
pub use chain::{output_entropy_chain, ChainReport, ChainStep};
pub use conditional::{
    conditional_entropy_estimate, mi_estimate, ChannelSpec, ConditionalEntropy, MiEstimate,
};
pub use discrete::{
    convolve, discrete_entropy, enumerate_grid_pmfs, sumset_entropy_check, DiscreteError, Pmf,
    SumsetEntropyReport,
};
pub use entropy_power::{entropy_power, entropy_power_stderr, epi_gap, EpiGap};
pub use gaussian::{complex_covariance, gaussian_plugin_entropy, hermitian_log_det};
pub use geometry::{
    bmi_check, minkowski_sum, restricted_sum, BmiReport, GeometryError, GridSet,
};
pub use knn::{ensemble_entropy, knn_entropy, RealSamples};

#[derive(Debug, Error)]
pub enum EstimatorError {
    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { got: usize, need: usize },
    #[error("neighbor count {0} outside the supported range [3, 20]")]
    InvalidNeighborCount(usize),
    #[error("sample dimension mismatch: got {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("singular sample covariance")]
    SingularCovariance,
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("channel evaluation failed: {0}")]
    Channel(String),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Which machinery produced an entropy value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    Knn,
    GaussianPlugin,
    DiscreteExact,
}

/// A differential entropy value in nats with its provenance.
///
/// `real_dims` is the real dimension of the underlying samples (2n for a
/// complex n-vector ensemble). A degenerate (zero-variance) input is
/// reported as `value = -∞` with the `degenerate` flag set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntropyEstimate {
    pub value: f64,
    pub stderr: f64,
    pub estimator: Estimator,
    pub sample_count: usize,
    pub real_dims: usize,
    pub degenerate: bool,
}

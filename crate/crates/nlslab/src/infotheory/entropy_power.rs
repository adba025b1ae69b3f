//! Entropy power and the entropy power inequality gap.
//!
//! The entropy power of a `d`-real-dimensional variable with differential
//! entropy `h` nats is `σ_e² = exp(2h/d) / (2πe)`: the per-dimension
//! variance of the Gaussian with the same entropy. For independent `X`
//! and `Y`, `σ_e²(X+Y) ≥ σ_e²(X) + σ_e²(Y)`, with equality exactly for
//! Gaussians with proportional covariances.

use rand::seq::SliceRandom;
use rand::Rng;

use super::knn::{knn_entropy, RealSamples};
use super::{EntropyEstimate, EstimatorError};

/// Entropy power of an estimate; the −∞ sentinel (deterministic variable)
/// maps to zero.
pub fn entropy_power(h: &EntropyEstimate) -> f64 {
    if h.degenerate || h.value == f64::NEG_INFINITY {
        return 0.0;
    }
    let d = h.real_dims as f64;
    (2.0 * h.value / d).exp() / (2.0 * std::f64::consts::PI * std::f64::consts::E)
}

/// Propagated standard error of [`entropy_power`]: `(2/d)·σ_e²·stderr(h)`.
pub fn entropy_power_stderr(h: &EntropyEstimate) -> f64 {
    if h.degenerate {
        return 0.0;
    }
    2.0 / h.real_dims as f64 * entropy_power(h) * h.stderr
}

/// Components of one EPI evaluation.
#[derive(Debug, Clone)]
pub struct EpiGap {
    pub sigma_e_x: f64,
    pub sigma_e_y: f64,
    pub sigma_e_sum: f64,
    /// `σ_e²(X+Y) − σ_e²(X) − σ_e²(Y)`; nonnegative up to estimator noise.
    pub gap: f64,
    pub stderr: f64,
    pub h_x: EntropyEstimate,
    pub h_y: EntropyEstimate,
    pub h_sum: EntropyEstimate,
}

/// Estimate the EPI gap for two independent sample sets of equal
/// dimension. Sums are formed by randomly pairing the two sets (the
/// caller's RNG keeps the pairing reproducible).
pub fn epi_gap<R: Rng + ?Sized>(
    x_rows: &[Vec<f64>],
    y_rows: &[Vec<f64>],
    k: usize,
    rng: &mut R,
) -> Result<EpiGap, EstimatorError> {
    let dx = x_rows.first().map(|r| r.len()).unwrap_or(0);
    let dy = y_rows.first().map(|r| r.len()).unwrap_or(0);
    if dx == 0 || dy == 0 {
        return Err(EstimatorError::EmptyInput);
    }
    if dx != dy {
        return Err(EstimatorError::DimensionMismatch { got: dy, expected: dx });
    }

    let count = x_rows.len().min(y_rows.len());
    let mut order: Vec<usize> = (0..count).collect();
    order.shuffle(rng);
    let sums: Vec<Vec<f64>> = (0..count)
        .map(|i| {
            x_rows[i]
                .iter()
                .zip(&y_rows[order[i]])
                .map(|(a, b)| a + b)
                .collect()
        })
        .collect();

    let h_x = knn_entropy(&RealSamples::from_rows(x_rows)?, k)?;
    let h_y = knn_entropy(&RealSamples::from_rows(y_rows)?, k)?;
    let h_sum = knn_entropy(&RealSamples::from_rows(&sums)?, k)?;

    let sigma_e_x = entropy_power(&h_x);
    let sigma_e_y = entropy_power(&h_y);
    let sigma_e_sum = entropy_power(&h_sum);
    let stderr = (entropy_power_stderr(&h_x).powi(2)
        + entropy_power_stderr(&h_y).powi(2)
        + entropy_power_stderr(&h_sum).powi(2))
    .sqrt();

    Ok(EpiGap {
        sigma_e_x,
        sigma_e_y,
        sigma_e_sum,
        gap: sigma_e_sum - sigma_e_x - sigma_e_y,
        stderr,
        h_x,
        h_y,
        h_sum,
    })
}

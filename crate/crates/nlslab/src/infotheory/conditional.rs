//! Conditional-entropy and mutual-information estimation through the
//! stochastic channel.
//!
//! The conditional entropy `h(out | in)` is estimated by freezing a set of
//! input points, propagating many noise realizations through each, and
//! averaging the per-point output entropies. Its lower bound is the noise
//! entropy rate `C_n + ln σ²(z)` per complex degree of freedom, with
//! `C_n = ln(πe/n)`; the linear channel attains it with equality. The
//! mutual-information estimate is `ĥ(out) − ĥ(out|in)`.

use rayon::prelude::*;

use super::knn::{ensemble_entropy, knn_entropy, RealSamples};
use super::{EntropyEstimate, EstimatorError};
use crate::grid::{Ensemble, ModeGrid, Spectrum};
use crate::propagator::{propagate_stochastic, ChannelParams};
use crate::sampling::{sample_gaussian_spectrum, NoiseStream};

/// A grid plus channel parameters: everything that defines the map from an
/// input spectrum to a random output spectrum.
#[derive(Debug, Clone, Copy)]
pub struct ChannelSpec {
    pub grid: ModeGrid,
    pub params: ChannelParams,
}

impl ChannelSpec {
    /// Per-complex-dof constant `C_n = ln(πe/n)`.
    pub fn c_n(&self) -> f64 {
        (std::f64::consts::PI * std::f64::consts::E / self.grid.n() as f64).ln()
    }

    /// Accumulated noise power `σ²(z) = B σ₀² z_total`.
    pub fn sigma_sq(&self) -> f64 {
        self.params.total_noise_power(&self.grid)
    }
}

/// Disjoint substream domains, packed into the high bits of the trial
/// index so different purposes can never collide.
pub mod domains {
    pub const INPUT_POINTS: u64 = 1;
    pub const CONDITIONAL_NOISE: u64 = 2;
    pub const OUTPUT_INPUT: u64 = 3;
    pub const OUTPUT_NOISE: u64 = 4;
    pub const PAIRING: u64 = 5;

    pub fn pack(domain: u64, major: u64, minor: u64) -> u64 {
        (domain << 56) | (major << 28) | minor
    }
}

#[derive(Debug, Clone)]
pub struct ConditionalEntropy {
    /// Mean of the per-point total entropies (nats over 2n real dims).
    pub estimate: EntropyEstimate,
    /// Estimate per complex degree of freedom.
    pub per_dof: f64,
    pub per_dof_stderr: f64,
    /// Noise-entropy-rate lower bound `C_n + ln σ²(z)` per dof.
    pub bound_per_dof: f64,
    pub per_point: Vec<f64>,
}

/// Average over input points of the output-ensemble entropy.
pub fn conditional_entropy_estimate(
    spec: &ChannelSpec,
    input_points: &[Spectrum],
    trials_per_point: usize,
    k: usize,
    master_seed: u64,
) -> Result<ConditionalEntropy, EstimatorError> {
    if input_points.is_empty() {
        return Err(EstimatorError::EmptyInput);
    }
    let estimates: Vec<EntropyEstimate> = input_points
        .par_iter()
        .enumerate()
        .map(|(p, point)| -> Result<EntropyEstimate, EstimatorError> {
            let members: Vec<Spectrum> = (0..trials_per_point)
                .map(|t| {
                    let ns = NoiseStream::new(
                        master_seed,
                        domains::pack(domains::CONDITIONAL_NOISE, p as u64, t as u64),
                    );
                    propagate_stochastic(point, &spec.params, &ns)
                        .map_err(|e| EstimatorError::Channel(e.to_string()))
                })
                .collect::<Result<_, _>>()?;
            let e = Ensemble::new(members)?;
            ensemble_entropy(&e, k)
        })
        .collect::<Result<_, _>>()?;

    let p = estimates.len() as f64;
    let n = spec.grid.n() as f64;
    let value = estimates.iter().map(|e| e.value).sum::<f64>() / p;
    // Independent per-point estimates: errors average down.
    let stderr = estimates
        .iter()
        .map(|e| e.stderr * e.stderr)
        .sum::<f64>()
        .sqrt()
        / p;

    Ok(ConditionalEntropy {
        estimate: EntropyEstimate {
            value,
            stderr,
            estimator: super::Estimator::Knn,
            sample_count: input_points.len() * trials_per_point,
            real_dims: 2 * spec.grid.n(),
            degenerate: false,
        },
        per_dof: value / n,
        per_dof_stderr: stderr / n,
        bound_per_dof: spec.c_n() + spec.sigma_sq().ln(),
        per_point: estimates.iter().map(|e| e.value).collect(),
    })
}

#[derive(Debug, Clone)]
pub struct MiEstimate {
    /// Mutual information per complex degree of freedom, nats.
    pub per_dof: f64,
    pub stderr: f64,
    pub h_output: EntropyEstimate,
    pub conditional: ConditionalEntropy,
}

/// `Î = ĥ(out) − ĥ(out|in)` per complex degree of freedom, with a
/// Gaussian input of average power `p0`.
#[allow(clippy::too_many_arguments)]
pub fn mi_estimate(
    spec: &ChannelSpec,
    p0: f64,
    output_trials: usize,
    input_points: usize,
    trials_per_point: usize,
    k: usize,
    master_seed: u64,
) -> Result<MiEstimate, EstimatorError> {
    // Unconditional output ensemble: fresh input and noise per trial.
    let outputs: Vec<Vec<f64>> = (0..output_trials)
        .into_par_iter()
        .map(|t| -> Result<Vec<f64>, EstimatorError> {
            let mut in_rng = NoiseStream::new(
                master_seed,
                domains::pack(domains::OUTPUT_INPUT, 0, t as u64),
            )
            .rng();
            let input = sample_gaussian_spectrum(spec.grid, p0, &mut in_rng)?;
            let ns = NoiseStream::new(
                master_seed,
                domains::pack(domains::OUTPUT_NOISE, 0, t as u64),
            );
            let out = propagate_stochastic(&input, &spec.params, &ns)
                .map_err(|e| EstimatorError::Channel(e.to_string()))?;
            Ok(out.coeffs().iter().flat_map(|c| [c.re, c.im]).collect())
        })
        .collect::<Result<_, _>>()?;
    let h_output = knn_entropy(&RealSamples::from_rows(&outputs)?, k)?;

    // Conditional leg over freshly drawn input points.
    let points: Vec<Spectrum> = (0..input_points)
        .map(|p| {
            let mut rng = NoiseStream::new(
                master_seed,
                domains::pack(domains::INPUT_POINTS, 0, p as u64),
            )
            .rng();
            sample_gaussian_spectrum(spec.grid, p0, &mut rng)
        })
        .collect::<Result<_, _>>()?;
    let conditional =
        conditional_entropy_estimate(spec, &points, trials_per_point, k, master_seed)?;

    let n = spec.grid.n() as f64;
    let per_dof = (h_output.value - conditional.estimate.value) / n;
    let stderr =
        (h_output.stderr.powi(2) + conditional.estimate.stderr.powi(2)).sqrt() / n;

    Ok(MiEstimate {
        per_dof,
        stderr,
        h_output,
        conditional,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagator::Scheme;

    fn linear_spec(n: usize, sigma_sq_target: f64) -> ChannelSpec {
        let grid = ModeGrid::new(n, 0.5).unwrap();
        let z = 0.25;
        let sigma0_sq = sigma_sq_target / (grid.bandwidth() * z);
        ChannelSpec {
            grid,
            params: ChannelParams {
                sigma0_sq,
                z_total: z,
                dz: 0.0125,
                scheme: Scheme::SplitStep,
                nonlinearity_on: false,
            },
        }
    }

    #[test]
    fn linear_channel_attains_the_noise_entropy_bound() {
        // Fixed input through the linear channel: conditional output is
        // Gaussian with per-mode variance σ²/n, so the conditional
        // entropy per dof equals C_n + ln σ² exactly.
        let spec = linear_spec(1, 0.25);
        let points: Vec<Spectrum> = (0..10)
            .map(|p| {
                let mut rng =
                    NoiseStream::new(7, domains::pack(domains::INPUT_POINTS, 0, p)).rng();
                sample_gaussian_spectrum(spec.grid, 1.0, &mut rng).unwrap()
            })
            .collect();
        let ce = conditional_entropy_estimate(&spec, &points, 4000, 5, 7).unwrap();
        assert!(
            (ce.per_dof - ce.bound_per_dof).abs() < 0.05,
            "per-dof {} vs bound {}",
            ce.per_dof,
            ce.bound_per_dof
        );
    }

    #[test]
    fn scaling_noise_shifts_the_bound_by_log_factor() {
        let a = linear_spec(2, 0.1);
        let b = linear_spec(2, 0.4);
        let ca = ChannelSpec::c_n(&a) + a.sigma_sq().ln();
        let cb = ChannelSpec::c_n(&b) + b.sigma_sq().ln();
        assert!((cb - ca - 4.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn linear_awgn_mi_matches_log_1_plus_snr() {
        // SNR = 4 → I = ln 5 per dof.
        let spec = linear_spec(1, 0.25);
        let mi = mi_estimate(&spec, 1.0, 20_000, 12, 3000, 5, 11).unwrap();
        let expect = 5.0f64.ln();
        assert!(
            (mi.per_dof - expect).abs() < 0.05,
            "I = {} ± {} vs {}",
            mi.per_dof,
            mi.stderr,
            expect
        );
    }

    #[test]
    fn zero_input_power_carries_no_information() {
        let spec = linear_spec(1, 0.25);
        let mi = mi_estimate(&spec, 0.0, 8000, 8, 2000, 5, 13).unwrap();
        assert!(
            mi.per_dof.abs() < (2.0 * mi.stderr).max(0.02),
            "I = {} ± {}",
            mi.per_dof,
            mi.stderr
        );
    }
}

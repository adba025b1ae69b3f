//! Deterministic and stochastic flows of the discretized channel.
//!
//! The deterministic flow `T_z` advances the rotating-frame mode vector by
//! one of two independent integrators — Strang split-step or classical RK4
//! on the interaction picture — that cross-validate each other. The
//! stochastic flow `S_z` interleaves deterministic steps with additive
//! circularly symmetric Gaussian noise of per-mode variance `f₀ σ₀² dz`,
//! drawn from a per-trial substream so trials are reproducible and
//! schedule-independent.

pub mod hamiltonian;
pub mod interaction;
mod rk4;
mod split_step;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{Spectrum, SpectrumError, TimeSignal};
use crate::sampling::{complex_normal, NoiseStream};

pub use hamiltonian::{default_fd_epsilon, hamiltonian, hamiltonian_xy, jacobian_det};
pub use interaction::{coupling_phase, interaction_rhs_fft, interaction_rhs_naive};

#[derive(Debug, Error)]
pub enum PropagatorError {
    #[error("step size must be positive and finite, got {0}")]
    BadStepSize(f64),
    #[error("total distance must be nonnegative and finite, got {0}")]
    BadDistance(f64),
    #[error("noise density must be nonnegative and finite, got {0}")]
    BadNoiseDensity(f64),
    #[error("step size {dz} exceeds total distance {z_total}")]
    StepLargerThanDistance { dz: f64, z_total: f64 },
    #[error("z_total/dz = {ratio} is not an integer step count")]
    StepCountMismatch { ratio: f64 },
    #[error("finite-difference epsilon must be positive, got {0}")]
    BadEpsilon(f64),
    #[error("non-finite finite-difference entry at row {row}, column {col}")]
    ConditioningFailure { row: usize, col: usize },
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Integrator selection for the deterministic substep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    SplitStep,
    Rk4Interaction,
}

/// Channel and integrator parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    /// Noise spectral density σ₀².
    pub sigma0_sq: f64,
    /// Total propagation distance.
    pub z_total: f64,
    /// Integrator step; must divide `z_total` exactly.
    pub dz: f64,
    pub scheme: Scheme,
    pub nonlinearity_on: bool,
}

impl ChannelParams {
    /// Build params from an explicit step count, avoiding divisibility
    /// surprises in hand-written configs.
    pub fn with_step_count(
        sigma0_sq: f64,
        z_total: f64,
        steps: usize,
        scheme: Scheme,
        nonlinearity_on: bool,
    ) -> Self {
        let dz = if steps == 0 { z_total.max(1e-12) } else { z_total / steps as f64 };
        Self {
            sigma0_sq,
            z_total,
            dz,
            scheme,
            nonlinearity_on,
        }
    }

    /// Validate and return the exact step count.
    ///
    /// The divisibility check allows a few ulps of slack so that `dz`
    /// computed as `z_total / steps` always passes; anything coarser (a
    /// genuinely fractional step count) is rejected.
    pub fn validate(&self) -> Result<usize, PropagatorError> {
        if !(self.dz.is_finite() && self.dz > 0.0) {
            return Err(PropagatorError::BadStepSize(self.dz));
        }
        if !(self.z_total.is_finite() && self.z_total >= 0.0) {
            return Err(PropagatorError::BadDistance(self.z_total));
        }
        if !(self.sigma0_sq.is_finite() && self.sigma0_sq >= 0.0) {
            return Err(PropagatorError::BadNoiseDensity(self.sigma0_sq));
        }
        if self.z_total == 0.0 {
            return Ok(0);
        }
        if self.dz > self.z_total {
            return Err(PropagatorError::StepLargerThanDistance {
                dz: self.dz,
                z_total: self.z_total,
            });
        }
        let ratio = self.z_total / self.dz;
        let steps = ratio.round();
        let tol = 4.0 * f64::EPSILON * ratio.abs();
        if (ratio - steps).abs() > tol || steps < 1.0 {
            return Err(PropagatorError::StepCountMismatch { ratio });
        }
        Ok(steps as usize)
    }

    /// Accumulated noise power `σ²(z) = B σ₀² z_total` on `grid`.
    pub fn total_noise_power(&self, grid: &crate::grid::ModeGrid) -> f64 {
        grid.bandwidth() * self.sigma0_sq * self.z_total
    }
}

/// Multiply each mode by the lab-frame dispersion phase `exp(j k² ω₀² dz)`.
/// A diagonal unitary: moduli, power and entropy are untouched.
pub fn dispersion_step(s: &Spectrum, dz: f64) -> Spectrum {
    let grid = s.grid();
    let coeffs = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c * Complex64::cis(grid.dispersion_phase(i + 1, dz)))
        .collect();
    Spectrum::new(grid, coeffs, s.z()).expect("phase rotation preserves validity")
}

/// Pointwise Kerr rotation `y = x·exp(-2j|x|²dz)`: the exact solution of
/// the nonlinearity-only evolution for each time sample. `|y| = |x|`.
pub fn nonlinear_step(x: &TimeSignal, dz: f64) -> TimeSignal {
    let samples = x
        .samples()
        .iter()
        .map(|v| v * Complex64::cis(-2.0 * v.norm_sqr() * dz))
        .collect();
    TimeSignal::new(x.grid(), samples, x.z()).expect("phase rotation preserves validity")
}

enum Stepper {
    Split(split_step::SplitStepStepper),
    Rk4(rk4::Rk4Stepper),
}

impl Stepper {
    fn new(params: &ChannelParams, grid: crate::grid::ModeGrid) -> Self {
        match params.scheme {
            Scheme::SplitStep => Stepper::Split(split_step::SplitStepStepper::new(
                grid,
                params.dz,
                params.nonlinearity_on,
            )),
            Scheme::Rk4Interaction => Stepper::Rk4(rk4::Rk4Stepper::new(
                grid,
                params.dz,
                params.nonlinearity_on,
            )),
        }
    }

    fn step(&mut self, state: &mut [Complex64], z: f64) {
        match self {
            Stepper::Split(s) => s.step(state, z),
            Stepper::Rk4(s) => s.step(state, z),
        }
    }
}

fn propagate_impl(
    s: &Spectrum,
    params: &ChannelParams,
    noise: Option<&NoiseStream>,
) -> Result<Spectrum, PropagatorError> {
    let steps = params.validate()?;
    let grid = s.grid();
    let n = grid.n();
    let mut state = s.coeffs().to_vec();
    let mut stepper = Stepper::new(params, grid);

    let inject = noise.filter(|_| params.sigma0_sq > 0.0);
    let mut rng = inject.map(|ns| ns.rng());
    let step_var = grid.f0() * params.sigma0_sq * params.dz;

    let z0 = s.z();
    for step in 0..steps {
        let z = z0 + step as f64 * params.dz;
        stepper.step(&mut state, z);
        if let Some(rng) = rng.as_mut() {
            for c in state.iter_mut().take(n) {
                *c += complex_normal(rng, step_var);
            }
        }
    }

    let mut out = Spectrum::new(grid, state, z0)?;
    out.set_z(z0 + steps as f64 * params.dz);
    Ok(out)
}

/// Deterministic flow `T_{z_total}` applied to `s`; `sigma0_sq` is ignored.
pub fn propagate_deterministic(
    s: &Spectrum,
    params: &ChannelParams,
) -> Result<Spectrum, PropagatorError> {
    propagate_impl(s, params, None)
}

/// Stochastic flow: after each deterministic step of `dz`, add i.i.d.
/// circularly symmetric Gaussian noise of per-mode variance `f₀ σ₀² dz`.
/// With `sigma0_sq = 0` this is bit-identical to the deterministic flow.
pub fn propagate_stochastic(
    s: &Spectrum,
    params: &ChannelParams,
    noise: &NoiseStream,
) -> Result<Spectrum, PropagatorError> {
    propagate_impl(s, params, Some(noise))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::ModeGrid;
    use crate::sampling::{sample_gaussian_spectrum, NoiseStream};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn det_params(scheme: Scheme, z_total: f64, dz: f64) -> ChannelParams {
        ChannelParams {
            sigma0_sq: 0.0,
            z_total,
            dz,
            scheme,
            nonlinearity_on: true,
        }
    }

    fn rel_dev(a: &Spectrum, b: &Spectrum) -> f64 {
        let num: f64 = a
            .coeffs()
            .iter()
            .zip(b.coeffs())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        num / b.power().sqrt().max(1e-300)
    }

    #[test]
    fn dispersion_step_examples() {
        let grid = ModeGrid::new(2, 1.0).unwrap();
        let s = Spectrum::new(
            grid,
            vec![Complex64::new(0.3, 0.1), Complex64::new(1.0, 0.0)],
            0.0,
        )
        .unwrap();
        // dz = 0 is the identity.
        assert_eq!(dispersion_step(&s, 0.0).coeffs(), s.coeffs());
        // Mode k=2 with ω₀=1 and dz=π/4 picks up e^{j·4·π/4} = -1.
        let rotated = dispersion_step(&s, PI / 4.0);
        assert!((rotated.coeffs()[1] - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
        // Diagonal unitary: power unchanged.
        let r = sample_gaussian_spectrum(grid, 2.0, &mut NoiseStream::new(1, 1).rng()).unwrap();
        let rot = dispersion_step(&r, 0.37);
        assert!((rot.power() - r.power()).abs() / r.power() < 1e-14);
    }

    #[test]
    fn nonlinear_step_examples() {
        let grid = ModeGrid::new(1, 1.0).unwrap();
        let zero = TimeSignal::new(grid, vec![Complex64::new(0.0, 0.0)], 0.0).unwrap();
        assert_eq!(nonlinear_step(&zero, 0.5).samples()[0].norm(), 0.0);

        // x=1, dz=π/4: e^{-jπ/2} = -j.
        let one = TimeSignal::new(grid, vec![Complex64::new(1.0, 0.0)], 0.0).unwrap();
        let y = nonlinear_step(&one, PI / 4.0);
        assert!((y.samples()[0] - Complex64::new(0.0, -1.0)).norm() < 1e-15);

        // Phase-only map: moduli preserved sample by sample.
        let grid = ModeGrid::new(1000, 1.0).unwrap();
        let s = sample_gaussian_spectrum(grid, 3.0, &mut NoiseStream::new(2, 0).rng()).unwrap();
        let x = s.to_time_signal();
        let y = nonlinear_step(&x, 0.8);
        for (a, b) in x.samples().iter().zip(y.samples()) {
            assert!((a.norm() - b.norm()).abs() < 1e-15 * a.norm().max(1.0));
        }
    }

    #[test]
    fn single_mode_closed_form_both_schemes() {
        // Q(z) = Q(0)·e^{-2j|Q(0)|²z}; at |Q(0)|=1, z=π/2 the output is -1.
        let grid = ModeGrid::new(1, 1.0).unwrap();
        let s = Spectrum::new(grid, vec![Complex64::new(1.0, 0.0)], 0.0).unwrap();
        for scheme in [Scheme::SplitStep, Scheme::Rk4Interaction] {
            let params = ChannelParams::with_step_count(0.0, FRAC_PI_2, 1571, scheme, true);
            let out = propagate_deterministic(&s, &params).unwrap();
            assert!(
                (out.coeffs()[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-8,
                "{scheme:?}: {:?}",
                out.coeffs()[0]
            );
        }
    }

    #[test]
    fn power_is_conserved_by_both_schemes() {
        let grid = ModeGrid::new(16, 0.1).unwrap();
        let s = sample_gaussian_spectrum(grid, 1.0, &mut NoiseStream::new(3, 0).rng()).unwrap();
        for scheme in [Scheme::SplitStep, Scheme::Rk4Interaction] {
            let params = det_params(scheme, 0.5, 1e-3);
            let out = propagate_deterministic(&s, &params).unwrap();
            let drift = (out.power() - s.power()).abs() / s.power();
            assert!(drift < 1e-8, "{scheme:?}: drift {drift:e}");
        }
    }

    #[test]
    fn linear_limit_reduces_to_pure_dispersion() {
        let grid = ModeGrid::new(8, 0.5).unwrap();
        let s = sample_gaussian_spectrum(grid, 1.0, &mut NoiseStream::new(4, 0).rng()).unwrap();
        for scheme in [Scheme::SplitStep, Scheme::Rk4Interaction] {
            let mut params = det_params(scheme, 0.7, 1e-3);
            params.nonlinearity_on = false;
            let out = propagate_deterministic(&s, &params).unwrap();
            // Lab-frame view: output must be the dispersion phases applied
            // to the input; equivalently the rotating-frame state is fixed.
            let expected = dispersion_step(&s, 0.7);
            let lab_out = out.lab_coeffs();
            let worst = lab_out
                .iter()
                .zip(expected.coeffs())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            assert!(worst < 1e-12, "{scheme:?}: {worst:e}");
            assert!(rel_dev(&out, &s) < 1e-12, "{scheme:?} rotating frame moved");
        }
    }

    #[test]
    fn schemes_agree_in_the_stated_regime() {
        let grid = ModeGrid::new(8, 0.1).unwrap();
        let s = sample_gaussian_spectrum(grid, 1.0, &mut NoiseStream::new(5, 0).rng()).unwrap();
        let a = propagate_deterministic(&s, &det_params(Scheme::SplitStep, 0.25, 2.5e-4)).unwrap();
        let b =
            propagate_deterministic(&s, &det_params(Scheme::Rk4Interaction, 0.25, 2.5e-4)).unwrap();
        let dev = rel_dev(&a, &b);
        assert!(dev < 1e-6, "schemes deviate by {dev:e}");
    }

    #[test]
    fn step_halving_recovers_theoretical_orders() {
        let grid = ModeGrid::new(8, 0.2).unwrap();
        let s = sample_gaussian_spectrum(grid, 2.0, &mut NoiseStream::new(6, 0).rng()).unwrap();
        let z = 0.2;
        let reference =
            propagate_deterministic(&s, &det_params(Scheme::Rk4Interaction, z, z / 2048.0))
                .unwrap();
        for (scheme, order) in [(Scheme::SplitStep, 2.0), (Scheme::Rk4Interaction, 4.0)] {
            let errs: Vec<f64> = [16.0, 32.0, 64.0]
                .iter()
                .map(|steps| {
                    let out =
                        propagate_deterministic(&s, &det_params(scheme, z, z / steps)).unwrap();
                    rel_dev(&out, &reference)
                })
                .collect();
            for w in errs.windows(2) {
                let slope = (w[0] / w[1]).log2();
                assert!(
                    (slope - order).abs() < 0.3,
                    "{scheme:?}: slope {slope}, errs {errs:?}"
                );
            }
        }
    }

    #[test]
    fn zero_noise_density_is_bit_identical_to_deterministic() {
        let grid = ModeGrid::new(8, 0.5).unwrap();
        let s = sample_gaussian_spectrum(grid, 1.0, &mut NoiseStream::new(7, 0).rng()).unwrap();
        for scheme in [Scheme::SplitStep, Scheme::Rk4Interaction] {
            let params = det_params(scheme, 0.25, 0.0125);
            let det = propagate_deterministic(&s, &params).unwrap();
            let sto = propagate_stochastic(&s, &params, &NoiseStream::new(99, 3)).unwrap();
            assert_eq!(det.coeffs(), sto.coeffs());
        }
    }

    #[test]
    fn mean_output_power_grows_by_accumulated_noise() {
        // 2000 trials keep this test quick; the acceptance suite runs the
        // full 10^4-trial version.
        let grid = ModeGrid::new(8, 0.25).unwrap();
        let z = 0.25;
        let sigma0_sq = 0.25 / (grid.bandwidth() * z);
        let params = ChannelParams {
            sigma0_sq,
            z_total: z,
            dz: 0.0125,
            scheme: Scheme::SplitStep,
            nonlinearity_on: true,
        };
        let trials = 2000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for t in 0..trials {
            let input = sample_gaussian_spectrum(
                grid,
                1.0,
                &mut NoiseStream::new(11, 1_000_000 + t).rng(),
            )
            .unwrap();
            let out = propagate_stochastic(&input, &params, &NoiseStream::new(11, t)).unwrap();
            let p = out.power();
            sum += p;
            sumsq += p * p;
        }
        let m = trials as f64;
        let mean = sum / m;
        let se = ((sumsq / m - mean * mean) / m).sqrt();
        assert!(
            (mean - 1.25).abs() < 3.0 * se,
            "mean {mean} ± {se} vs 1.25"
        );

        // Zero input: mean output power is σ²(z) alone.
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for t in 0..trials {
            let out = propagate_stochastic(
                &Spectrum::zero(grid, 0.0),
                &params,
                &NoiseStream::new(12, t),
            )
            .unwrap();
            let p = out.power();
            sum += p;
            sumsq += p * p;
        }
        let mean = sum / m;
        let se = ((sumsq / m - mean * mean) / m).sqrt();
        assert!((mean - 0.25).abs() < 3.0 * se, "zero input: {mean} ± {se}");
    }

    #[test]
    fn doubling_noise_density_doubles_excess_power() {
        let grid = ModeGrid::new(4, 0.5).unwrap();
        let z = 0.2;
        let trials = 4000;
        let mut excess = [0.0f64; 2];
        for (i, scale) in [1.0, 2.0].iter().enumerate() {
            let params = ChannelParams {
                sigma0_sq: 0.8 * scale,
                z_total: z,
                dz: 0.01,
                scheme: Scheme::SplitStep,
                nonlinearity_on: true,
            };
            let mut sum = 0.0;
            for t in 0..trials {
                let input = sample_gaussian_spectrum(
                    grid,
                    1.0,
                    &mut NoiseStream::new(21, 1_000_000 + t).rng(),
                )
                .unwrap();
                let out =
                    propagate_stochastic(&input, &params, &NoiseStream::new(21, t)).unwrap();
                sum += out.power() - input.power();
            }
            excess[i] = sum / trials as f64;
        }
        let ratio = excess[1] / excess[0];
        assert!((ratio - 2.0).abs() < 0.15, "ratio {ratio}");
    }

    #[test]
    fn params_validation_rejects_bad_step_counts() {
        let bad = ChannelParams {
            sigma0_sq: 0.0,
            z_total: 1.0,
            dz: 0.3,
            scheme: Scheme::SplitStep,
            nonlinearity_on: true,
        };
        assert!(matches!(
            bad.validate(),
            Err(PropagatorError::StepCountMismatch { .. })
        ));

        let too_big = ChannelParams {
            sigma0_sq: 0.0,
            z_total: 0.1,
            dz: 0.2,
            scheme: Scheme::SplitStep,
            nonlinearity_on: true,
        };
        assert!(matches!(
            too_big.validate(),
            Err(PropagatorError::StepLargerThanDistance { .. })
        ));

        // Decimal configs and computed step sizes must both pass.
        let decimal = ChannelParams {
            sigma0_sq: 0.0,
            z_total: 0.25,
            dz: 0.01,
            scheme: Scheme::SplitStep,
            nonlinearity_on: true,
        };
        assert_eq!(decimal.validate().unwrap(), 25);
        let computed = ChannelParams::with_step_count(0.0, FRAC_PI_2, 1571, Scheme::SplitStep, true);
        assert_eq!(computed.validate().unwrap(), 1571);
    }
}

//! Mode grids and the frequency/time-domain states that live on them.
//!
//! A [`ModeGrid`] fixes `n` positive harmonics of a fundamental angular
//! frequency `omega0`; mode `k` (1-based) sits at `k * omega0`. A
//! [`Spectrum`] holds the complex coefficient vector of the coupled-mode
//! channel at a propagation distance `z`, stored in the rotating frame in
//! which the quadratic dispersion phase `exp(j k² ω₀² z)` has been factored
//! out. At `z = 0` the rotating and lab frames coincide, so channel inputs
//! need no frame bookkeeping.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("mode count must be at least 1")]
    EmptyGrid,
    #[error("fundamental frequency must be positive and finite, got {0}")]
    BadOmega0(f64),
    #[error("coefficient vector has length {got}, grid expects {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("non-finite amplitude at mode index {0}")]
    NonFinite(usize),
    #[error("target power must be nonnegative and finite, got {0}")]
    NegativePower(f64),
    #[error("ensemble needs at least 2 members, got {0}")]
    TooFewMembers(usize),
    #[error("ensemble members disagree on grid or distance")]
    MixedEnsemble,
}

/// Frequency discretization: `n` modes at angular frequencies `k·omega0`,
/// `k ∈ {1, …, n}`.
///
/// `omega0` is the single source of truth; `f0`, the period and the
/// bandwidth are derived on demand so they can never drift out of sync.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeGrid {
    n: usize,
    omega0: f64,
}

impl ModeGrid {
    pub fn new(n: usize, omega0: f64) -> Result<Self, SpectrumError> {
        if n == 0 {
            return Err(SpectrumError::EmptyGrid);
        }
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(SpectrumError::BadOmega0(omega0));
        }
        Ok(Self { n, omega0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// Fundamental frequency `f0 = omega0 / 2π`.
    pub fn f0(&self) -> f64 {
        self.omega0 / std::f64::consts::TAU
    }

    /// Signal period `T = 2π / omega0`.
    pub fn period(&self) -> f64 {
        std::f64::consts::TAU / self.omega0
    }

    /// Total bandwidth `B = n · f0`.
    pub fn bandwidth(&self) -> f64 {
        self.n as f64 * self.f0()
    }

    /// Quadratic dispersion phase `k² ω₀² z` of mode `k` at distance `z`.
    pub(crate) fn dispersion_phase(&self, k: usize, z: f64) -> f64 {
        (k * k) as f64 * self.omega0 * self.omega0 * z
    }
}

fn check_coeffs(grid: &ModeGrid, coeffs: &[Complex64]) -> Result<(), SpectrumError> {
    if coeffs.len() != grid.n() {
        return Err(SpectrumError::LengthMismatch {
            got: coeffs.len(),
            expected: grid.n(),
        });
    }
    for (i, c) in coeffs.iter().enumerate() {
        if !(c.re.is_finite() && c.im.is_finite()) {
            return Err(SpectrumError::NonFinite(i));
        }
    }
    Ok(())
}

/// Frequency-domain channel state at distance `z`.
///
/// `coeffs[k-1]` is the rotating-frame coefficient of mode `k`: the
/// variable the coupled-mode equations evolve, with the dispersion phase
/// factored out. [`Spectrum::lab_coeffs`] restores that phase.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: ModeGrid,
    coeffs: Vec<Complex64>,
    z: f64,
}

impl Spectrum {
    pub fn new(grid: ModeGrid, coeffs: Vec<Complex64>, z: f64) -> Result<Self, SpectrumError> {
        check_coeffs(&grid, &coeffs)?;
        Ok(Self { grid, coeffs, z })
    }

    /// Zero signal on `grid` at distance `z`.
    pub fn zero(grid: ModeGrid, z: f64) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.n()],
            z,
        }
    }

    pub fn grid(&self) -> ModeGrid {
        self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// Sample power `Σ_k |Q_k|²` (single realization, no expectation).
    pub fn power(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Coefficients with the dispersion phase `exp(j k² ω₀² z)` restored,
    /// i.e. the Fourier coefficients of the physical waveform at `z`.
    pub fn lab_coeffs(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Complex64::cis(self.grid.dispersion_phase(i + 1, self.z)))
            .collect()
    }

    /// Inverse of [`Spectrum::lab_coeffs`]: wrap lab-frame coefficients at
    /// distance `z` back into a rotating-frame state.
    pub fn from_lab_coeffs(
        grid: ModeGrid,
        lab: &[Complex64],
        z: f64,
    ) -> Result<Self, SpectrumError> {
        let coeffs = lab
            .iter()
            .enumerate()
            .map(|(i, c)| c * Complex64::cis(-grid.dispersion_phase(i + 1, z)))
            .collect();
        Self::new(grid, coeffs, z)
    }

    /// Unitary transform of the stored coefficients to `n` equispaced time
    /// samples over one period. See [`crate::transform`].
    pub fn to_time_signal(&self) -> TimeSignal {
        crate::transform::spectrum_to_time(self)
    }

    /// Physical waveform samples at distance `z`: the transform of the
    /// lab-frame coefficients rather than the rotating-frame ones.
    pub fn waveform(&self) -> TimeSignal {
        let lab = Spectrum {
            grid: self.grid,
            coeffs: self.lab_coeffs(),
            z: self.z,
        };
        crate::transform::spectrum_to_time(&lab)
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut Vec<Complex64> {
        &mut self.coeffs
    }

    pub(crate) fn set_z(&mut self, z: f64) {
        self.z = z;
    }
}

/// Time-domain counterpart of a [`Spectrum`]: `n` complex samples at
/// `t_i = i·T/n`, `i ∈ {0, …, n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSignal {
    grid: ModeGrid,
    samples: Vec<Complex64>,
    z: f64,
}

impl TimeSignal {
    pub fn new(grid: ModeGrid, samples: Vec<Complex64>, z: f64) -> Result<Self, SpectrumError> {
        check_coeffs(&grid, &samples)?;
        Ok(Self { grid, samples, z })
    }

    pub fn grid(&self) -> ModeGrid {
        self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn power(&self) -> f64 {
        self.samples.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn to_spectrum(&self) -> Spectrum {
        crate::transform::time_to_spectrum(self)
    }

    pub(crate) fn from_parts(grid: ModeGrid, samples: Vec<Complex64>, z: f64) -> Self {
        Self { grid, samples, z }
    }
}

/// Monte Carlo representation of a random spectrum: a set of realizations
/// sharing one grid and one distance.
#[derive(Debug, Clone)]
pub struct Ensemble {
    grid: ModeGrid,
    z: f64,
    members: Vec<Spectrum>,
}

impl Ensemble {
    pub fn new(members: Vec<Spectrum>) -> Result<Self, SpectrumError> {
        if members.len() < 2 {
            return Err(SpectrumError::TooFewMembers(members.len()));
        }
        let grid = members[0].grid();
        let z = members[0].z();
        if members.iter().any(|m| m.grid() != grid || m.z() != z) {
            return Err(SpectrumError::MixedEnsemble);
        }
        Ok(Self { grid, z, members })
    }

    pub fn grid(&self) -> ModeGrid {
        self.grid
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn members(&self) -> &[Spectrum] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Mean sample power over the ensemble.
    pub fn mean_power(&self) -> f64 {
        self.members.iter().map(Spectrum::power).sum::<f64>() / self.members.len() as f64
    }

    /// Flatten each member into 2n real coordinates
    /// `(Re Q_1, Im Q_1, …, Re Q_n, Im Q_n)`.
    pub fn to_real_rows(&self) -> Vec<Vec<f64>> {
        self.members
            .iter()
            .map(|m| {
                m.coeffs()
                    .iter()
                    .flat_map(|c| [c.re, c.im])
                    .collect::<Vec<f64>>()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_derived_quantities_are_consistent() {
        let g = ModeGrid::new(8, 0.5).unwrap();
        assert_eq!(g.f0(), 0.5 / std::f64::consts::TAU);
        assert_eq!(g.period(), std::f64::consts::TAU / 0.5);
        assert_eq!(g.bandwidth(), 8.0 * g.f0());
    }

    #[test]
    fn grid_rejects_bad_parameters() {
        assert!(ModeGrid::new(0, 1.0).is_err());
        assert!(ModeGrid::new(4, 0.0).is_err());
        assert!(ModeGrid::new(4, -1.0).is_err());
        assert!(ModeGrid::new(4, f64::NAN).is_err());
    }

    #[test]
    fn power_sums_squared_moduli() {
        let g = ModeGrid::new(2, 1.0).unwrap();
        let s = Spectrum::new(
            g,
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)],
            0.0,
        )
        .unwrap();
        assert_eq!(s.power(), 5.0);
    }

    #[test]
    fn power_of_zero_signal_is_zero() {
        let g = ModeGrid::new(16, 1.0).unwrap();
        assert_eq!(Spectrum::zero(g, 0.0).power(), 0.0);
    }

    #[test]
    fn spectrum_rejects_nan_and_length_mismatch() {
        let g = ModeGrid::new(2, 1.0).unwrap();
        assert!(matches!(
            Spectrum::new(g, vec![Complex64::new(0.0, 0.0)], 0.0),
            Err(SpectrumError::LengthMismatch { .. })
        ));
        assert!(matches!(
            Spectrum::new(
                g,
                vec![Complex64::new(f64::NAN, 0.0), Complex64::new(0.0, 0.0)],
                0.0
            ),
            Err(SpectrumError::NonFinite(0))
        ));
    }

    #[test]
    fn lab_frame_roundtrip_is_identity_at_machine_precision() {
        let g = ModeGrid::new(4, 0.7).unwrap();
        let coeffs = vec![
            Complex64::new(0.3, -0.4),
            Complex64::new(-1.0, 0.2),
            Complex64::new(0.0, 0.9),
            Complex64::new(0.5, 0.5),
        ];
        let s = Spectrum::new(g, coeffs.clone(), 1.3).unwrap();
        let back = Spectrum::from_lab_coeffs(g, &s.lab_coeffs(), 1.3).unwrap();
        for (a, b) in back.coeffs().iter().zip(&coeffs) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn ensemble_requires_two_members_and_shared_state() {
        let g = ModeGrid::new(2, 1.0).unwrap();
        let a = Spectrum::zero(g, 0.0);
        assert!(matches!(
            Ensemble::new(vec![a.clone()]),
            Err(SpectrumError::TooFewMembers(1))
        ));
        let b = Spectrum::zero(g, 1.0);
        assert!(matches!(
            Ensemble::new(vec![a, b]),
            Err(SpectrumError::MixedEnsemble)
        ));
    }
}

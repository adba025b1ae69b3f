//! Four-wave-mixing interaction term of the coupled-mode system.
//!
//! The rotating-frame equations of motion are
//!
//! ```text
//! ∂_z Q_k = -2j Σ_{l+m-n-k=0} exp(j Ω_{lmnk} z) Q_l Q_m Q_n*,
//! Ω_{lmnk} = ω₀² (l² + m² - n² - k²),
//! ```
//!
//! with all four indices restricted to the band `{1, …, n}`. Two
//! independent evaluations are provided: a literal triple loop over index
//! quadruples, and an FFT route that converts to lab-frame coefficients,
//! forms `|U|²U` on a zero-padded grid (padding ≥ 3n-2 keeps every product
//! frequency in a distinct bin, so no aliased quadruple ever lands back in
//! band), and reads off the in-band coefficients. The two must agree to
//! near machine precision; the loop is the oracle for the FFT route.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::grid::{ModeGrid, Spectrum};

/// Phase mismatch `Ω_{lmnk} = ω₀²(l² + m² − n² − k²)` of one quadruple.
pub fn coupling_phase(grid: &ModeGrid, l: usize, m: usize, n: usize, k: usize) -> f64 {
    let w2 = grid.omega0() * grid.omega0();
    w2 * ((l * l + m * m) as f64 - (n * n + k * k) as f64)
}

/// Reusable FFT plans and buffers for one grid size.
pub struct SpectralWorkspace {
    n: usize,
    /// Cubic products need ≥ 3n-2 bins; 3n is the smallest convenient size.
    pad3: usize,
    fwd3: Arc<dyn Fft<f64>>,
    inv3: Arc<dyn Fft<f64>>,
    /// Intensity (pair) products need ≥ 2n-1 bins.
    pad2: usize,
    fwd2: Arc<dyn Fft<f64>>,
    inv2: Arc<dyn Fft<f64>>,
    buf3: Vec<Complex64>,
    buf2: Vec<Complex64>,
}

impl SpectralWorkspace {
    pub fn new(n: usize) -> Self {
        let pad3 = 3 * n;
        let pad2 = 2 * n;
        let mut planner = FftPlanner::new();
        Self {
            n,
            pad3,
            fwd3: planner.plan_fft_forward(pad3),
            inv3: planner.plan_fft_inverse(pad3),
            pad2,
            fwd2: planner.plan_fft_forward(pad2),
            inv2: planner.plan_fft_inverse(pad2),
            buf3: vec![Complex64::new(0.0, 0.0); pad3],
            buf2: vec![Complex64::new(0.0, 0.0); pad2],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// In-band coefficients of `|U|²U` where `U(t) = Σ_k u_k e^{jkω₀t}`,
    /// evaluated exactly via the zero-padded grid.
    pub fn cubic_band(&mut self, u: &[Complex64], out: &mut [Complex64]) {
        let n = self.n;
        debug_assert_eq!(u.len(), n);
        debug_assert_eq!(out.len(), n);
        self.buf3.fill(Complex64::new(0.0, 0.0));
        for k in 1..=n {
            self.buf3[k] = u[k - 1];
        }
        self.inv3.process(&mut self.buf3);
        for t in self.buf3.iter_mut() {
            *t *= t.norm_sqr();
        }
        self.fwd3.process(&mut self.buf3);
        let scale = 1.0 / self.pad3 as f64;
        for k in 1..=n {
            out[k - 1] = self.buf3[k] * scale;
        }
    }

    /// Nonnegative-lag Fourier coefficients `I_p = Σ_{l-n=p} u_l u_n*`
    /// (p = 0..n-1) of the in-band intensity `|U(t)|²`.
    pub fn intensity_lags(&mut self, u: &[Complex64], out: &mut [Complex64]) {
        let n = self.n;
        debug_assert_eq!(u.len(), n);
        debug_assert_eq!(out.len(), n);
        self.buf2.fill(Complex64::new(0.0, 0.0));
        for k in 1..=n {
            self.buf2[k] = u[k - 1];
        }
        self.inv2.process(&mut self.buf2);
        for t in self.buf2.iter_mut() {
            *t = Complex64::new(t.norm_sqr(), 0.0);
        }
        self.fwd2.process(&mut self.buf2);
        let scale = 1.0 / self.pad2 as f64;
        for p in 0..n {
            out[p] = self.buf2[p] * scale;
        }
    }

    /// Pointwise Kerr phase rotation `u ← band(F[x e^{-j|x|² dz_half_phase}])`
    /// on the padded grid. Used only as a cheap midpoint predictor.
    pub fn pointwise_kerr_band(&mut self, u: &[Complex64], phase_scale: f64, out: &mut [Complex64]) {
        let n = self.n;
        self.buf3.fill(Complex64::new(0.0, 0.0));
        for k in 1..=n {
            self.buf3[k] = u[k - 1];
        }
        self.inv3.process(&mut self.buf3);
        for t in self.buf3.iter_mut() {
            *t *= Complex64::cis(phase_scale * t.norm_sqr());
        }
        self.fwd3.process(&mut self.buf3);
        let scale = 1.0 / self.pad3 as f64;
        for k in 1..=n {
            out[k - 1] = self.buf3[k] * scale;
        }
    }
}

/// Interaction right-hand side by direct summation over quadruples.
pub fn rhs_naive(grid: &ModeGrid, q: &[Complex64], z: f64) -> Vec<Complex64> {
    let n = grid.n();
    let w2 = grid.omega0() * grid.omega0();
    let minus_two_j = Complex64::new(0.0, -2.0);
    let mut rhs = vec![Complex64::new(0.0, 0.0); n];
    for k in 1..=n {
        let mut acc = Complex64::new(0.0, 0.0);
        for l in 1..=n {
            for m in 1..=n {
                let nn = l + m;
                if nn <= k || nn - k > n {
                    continue;
                }
                let nn = nn - k; // l + m - n - k = 0
                let omega = w2 * ((l * l + m * m) as f64 - (nn * nn + k * k) as f64);
                acc += Complex64::cis(omega * z) * q[l - 1] * q[m - 1] * q[nn - 1].conj();
            }
        }
        rhs[k - 1] = minus_two_j * acc;
    }
    rhs
}

/// Interaction right-hand side via the dealiased FFT convolution.
///
/// Writes into `out`; `u_scratch` must have length `n`.
pub fn rhs_fft(
    grid: &ModeGrid,
    q: &[Complex64],
    z: f64,
    ws: &mut SpectralWorkspace,
    u_scratch: &mut [Complex64],
    out: &mut [Complex64],
) {
    let n = grid.n();
    for k in 1..=n {
        u_scratch[k - 1] = q[k - 1] * Complex64::cis(grid.dispersion_phase(k, z));
    }
    ws.cubic_band(u_scratch, out);
    let minus_two_j = Complex64::new(0.0, -2.0);
    for k in 1..=n {
        out[k - 1] *= minus_two_j * Complex64::cis(-grid.dispersion_phase(k, z));
    }
}

/// Public wrapper over [`rhs_naive`] for a [`Spectrum`].
pub fn interaction_rhs_naive(s: &Spectrum, z: f64) -> Vec<Complex64> {
    rhs_naive(&s.grid(), s.coeffs(), z)
}

/// Public wrapper over [`rhs_fft`] for a [`Spectrum`].
pub fn interaction_rhs_fft(s: &Spectrum, z: f64) -> Vec<Complex64> {
    let n = s.grid().n();
    let mut ws = SpectralWorkspace::new(n);
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    rhs_fft(&s.grid(), s.coeffs(), z, &mut ws, &mut u, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::ModeGrid;
    use crate::sampling::{sample_gaussian_spectrum, NoiseStream};

    #[test]
    fn single_mode_reduces_to_closed_form() {
        // n=1: rhs = -2j |a|² a, independent of z since Ω_1111 = 0.
        let grid = ModeGrid::new(1, 1.0).unwrap();
        let a = Complex64::new(0.8, -0.3);
        let s = Spectrum::new(grid, vec![a], 0.0).unwrap();
        let expect = Complex64::new(0.0, -2.0) * a.norm_sqr() * a;
        for z in [0.0, 0.37, 2.0] {
            let naive = interaction_rhs_naive(&s, z)[0];
            let fft = interaction_rhs_fft(&s, z)[0];
            assert!((naive - expect).norm() < 1e-15);
            assert!((fft - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn zero_input_gives_zero_rhs() {
        let grid = ModeGrid::new(8, 0.5).unwrap();
        let s = Spectrum::zero(grid, 0.0);
        assert!(interaction_rhs_naive(&s, 0.2).iter().all(|c| c.norm() == 0.0));
        assert!(interaction_rhs_fft(&s, 0.2).iter().all(|c| c.norm() < 1e-300));
    }

    #[test]
    fn naive_and_fft_routes_agree() {
        for (n, seed) in [(1usize, 1u64), (2, 2), (8, 3), (16, 4), (33, 5), (64, 6)] {
            let grid = ModeGrid::new(n, 0.7).unwrap();
            let s = sample_gaussian_spectrum(grid, 2.0, &mut NoiseStream::new(9, seed).rng())
                .unwrap();
            let a = interaction_rhs_naive(&s, 0.3);
            let b = interaction_rhs_fft(&s, 0.3);
            let scale: f64 = a.iter().map(|c| c.norm()).fold(0.0, f64::max);
            let worst: f64 = a
                .iter()
                .zip(&b)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            assert!(worst / scale.max(1e-300) < 1e-12, "n={n}: {worst} vs {scale}");
        }
    }

    #[test]
    fn intensity_lags_match_direct_sum() {
        let n = 6;
        let grid = ModeGrid::new(n, 1.0).unwrap();
        let s =
            sample_gaussian_spectrum(grid, 1.0, &mut NoiseStream::new(5, 0).rng()).unwrap();
        let u = s.coeffs();
        let mut ws = SpectralWorkspace::new(n);
        let mut lags = vec![Complex64::new(0.0, 0.0); n];
        ws.intensity_lags(u, &mut lags);
        for p in 0..n {
            let mut direct = Complex64::new(0.0, 0.0);
            for l in 1..=n {
                if l > p && l - p >= 1 {
                    direct += u[l - 1] * u[l - p - 1].conj();
                }
            }
            assert!((lags[p] - direct).norm() < 1e-13, "lag {p}");
        }
    }
}

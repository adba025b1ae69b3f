//! Unitary transforms between mode coefficients and time samples.
//!
//! With modes `k ∈ {1, …, n}` at frequencies `k ω₀` and samples at
//! `t_i = i·T/n`, the map is
//!
//! ```text
//! x_i = n^{-1/2} Σ_k Q_k exp(+2πj i k / n)
//! ```
//!
//! which is a unitary DFT up to a relabeling of bins (mode `n` occupies
//! DFT bin 0). The symmetric `1/√n` normalization keeps both power and
//! differential entropy invariant under the transform, so statements about
//! either carry over between domains with no Jacobian corrections.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::grid::{Spectrum, TimeSignal};

/// Map mode index `k ∈ {1, …, n}` to its DFT bin `k mod n`.
fn bin_of_mode(k: usize, n: usize) -> usize {
    k % n
}

/// Coefficients → time samples (unitary).
pub fn spectrum_to_time(s: &Spectrum) -> TimeSignal {
    let n = s.grid().n();
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (i, c) in s.coeffs().iter().enumerate() {
        buf[bin_of_mode(i + 1, n)] = *c;
    }
    let mut planner = FftPlanner::new();
    planner.plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / (n as f64).sqrt();
    for v in &mut buf {
        *v *= scale;
    }
    TimeSignal::from_parts(s.grid(), buf, s.z())
}

/// Time samples → coefficients (unitary inverse of [`spectrum_to_time`]).
pub fn time_to_spectrum(x: &TimeSignal) -> Spectrum {
    let n = x.grid().n();
    let mut buf = x.samples().to_vec();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / (n as f64).sqrt();
    let coeffs: Vec<Complex64> = (1..=n).map(|k| buf[bin_of_mode(k, n)] * scale).collect();
    Spectrum::new(x.grid(), coeffs, x.z()).expect("transform preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::ModeGrid;

    fn random_spectrum(n: usize, seed: u64) -> Spectrum {
        // Tiny deterministic LCG; good enough for structural tests.
        let mut state = seed;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let grid = ModeGrid::new(n, 1.0).unwrap();
        let coeffs = (0..n).map(|_| Complex64::new(next(), next())).collect();
        Spectrum::new(grid, coeffs, 0.0).unwrap()
    }

    #[test]
    fn impulse_spreads_to_constant_modulus() {
        let grid = ModeGrid::new(4, 1.0).unwrap();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 4];
        coeffs[0] = Complex64::new(1.0, 0.0);
        let s = Spectrum::new(grid, coeffs, 0.0).unwrap();
        let x = s.to_time_signal();
        for v in x.samples() {
            assert!((v.norm() - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn round_trip_is_identity_to_1e12() {
        for n in [1, 2, 3, 8, 17, 64] {
            let s = random_spectrum(n, 42 + n as u64);
            let back = s.to_time_signal().to_spectrum();
            let num: f64 = s
                .coeffs()
                .iter()
                .zip(back.coeffs())
                .map(|(a, b)| (a - b).norm_sqr())
                .sum();
            let den: f64 = s.power().max(1e-300);
            assert!((num / den).sqrt() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn parseval_holds_on_random_vectors() {
        for seed in 0..100 {
            let s = random_spectrum(16, seed);
            let x = s.to_time_signal();
            let rel = (x.power() - s.power()).abs() / s.power().max(1e-300);
            assert!(rel < 1e-12);
        }
    }
}

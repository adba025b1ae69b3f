//! Hamiltonian function of the coupled-mode system and a finite-difference
//! Jacobian-determinant probe for its flow.
//!
//! In the canonical pairs `(x_k, y_k) = (q_k, q_k*)` the system admits the
//! generating function
//!
//! ```text
//! H(x, y; z) = j Σ_k ω₀² k² x_k y_k
//!            - j Σ_{a+b=c+d} x_a x_b y_c y_d exp(j Ω_{abcd} z)
//! ```
//!
//! with `ẋ_k = ∂H/∂y_k`, `ẏ_k = -∂H/∂x_k`. Note that the quadratic term
//! contributes `j ω₀² k² x_k` to `ẋ_k` on top of the four-wave-mixing sum,
//! so the generated field is the interaction right-hand side plus that
//! diagonal rotation; the consistency test in this crate checks exactly
//! that identity. Volume preservation of the flow (unit Jacobian of the
//! map on ℝ^{2n}) is probed numerically by [`jacobian_det`].

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::grid::{ModeGrid, Spectrum};

use super::{propagate_deterministic, ChannelParams, PropagatorError};

/// Evaluate `H` at formally independent `(x, y)`; the physical value is at
/// `y = x*` but the finite-difference gradient needs the two legs free.
pub fn hamiltonian_xy(grid: &ModeGrid, x: &[Complex64], y: &[Complex64], z: f64) -> Complex64 {
    let n = grid.n();
    assert_eq!(x.len(), n);
    assert_eq!(y.len(), n);
    let w2 = grid.omega0() * grid.omega0();
    let j = Complex64::new(0.0, 1.0);

    let mut quad = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        quad += w2 * (k * k) as f64 * x[k - 1] * y[k - 1];
    }

    let mut quart = Complex64::new(0.0, 0.0);
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                let d = a + b;
                if d <= c || d - c > n {
                    continue;
                }
                let d = d - c; // a + b - c - d = 0
                let omega = w2 * ((a * a + b * b) as f64 - (c * c + d * d) as f64);
                quart += x[a - 1] * x[b - 1] * y[c - 1] * y[d - 1] * Complex64::cis(omega * z);
            }
        }
    }
    j * quad - j * quart
}

/// `H` evaluated on the physical manifold `y = x*` for a spectrum state.
pub fn hamiltonian(s: &Spectrum, z: f64) -> Complex64 {
    let conj: Vec<Complex64> = s.coeffs().iter().map(|c| c.conj()).collect();
    hamiltonian_xy(&s.grid(), s.coeffs(), &conj, z)
}

/// Finite-difference step: `1e-5 · max(1, ‖s‖∞)` balances truncation
/// against rounding for double precision.
pub fn default_fd_epsilon(s: &Spectrum) -> f64 {
    let sup = s
        .coeffs()
        .iter()
        .map(|c| c.re.abs().max(c.im.abs()))
        .fold(0.0f64, f64::max);
    1e-5 * sup.max(1.0)
}

/// |det J| of the deterministic flow viewed as a map on ℝ^{2n}, by central
/// finite differences of every output coordinate in every input coordinate.
pub fn jacobian_det(
    params: &ChannelParams,
    at: &Spectrum,
    eps: f64,
) -> Result<f64, PropagatorError> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(PropagatorError::BadEpsilon(eps));
    }
    let n = at.grid().n();
    let dim = 2 * n;
    let mut jac = DMatrix::<f64>::zeros(dim, dim);

    let flow = |s: &Spectrum| propagate_deterministic(s, params);
    let real_coords = |s: &Spectrum| -> Vec<f64> {
        s.coeffs().iter().flat_map(|c| [c.re, c.im]).collect()
    };

    for col in 0..dim {
        let mut plus = at.clone();
        let mut minus = at.clone();
        {
            let c = &mut plus.coeffs_mut()[col / 2];
            if col % 2 == 0 {
                c.re += eps;
            } else {
                c.im += eps;
            }
        }
        {
            let c = &mut minus.coeffs_mut()[col / 2];
            if col % 2 == 0 {
                c.re -= eps;
            } else {
                c.im -= eps;
            }
        }
        let fp = real_coords(&flow(&plus)?);
        let fm = real_coords(&flow(&minus)?);
        for row in 0..dim {
            let d = (fp[row] - fm[row]) / (2.0 * eps);
            if !d.is_finite() {
                return Err(PropagatorError::ConditioningFailure { row, col });
            }
            jac[(row, col)] = d;
        }
    }

    Ok(jac.lu().determinant().abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagator::interaction::interaction_rhs_naive;
    use crate::propagator::Scheme;
    use crate::sampling::{sample_gaussian_spectrum, NoiseStream};

    #[test]
    fn zero_state_has_zero_hamiltonian() {
        let grid = ModeGrid::new(4, 1.0).unwrap();
        let s = Spectrum::zero(grid, 0.0);
        assert_eq!(hamiltonian(&s, 0.3), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn unit_single_mode_cancels_exactly() {
        // n=1, q=1, ω₀=1: quadratic term j·1 and quartic term j·1 cancel.
        let grid = ModeGrid::new(1, 1.0).unwrap();
        let s = Spectrum::new(grid, vec![Complex64::new(1.0, 0.0)], 0.0).unwrap();
        for z in [0.0, 0.5, 2.0] {
            assert!(hamiltonian(&s, z).norm() < 1e-15);
        }
    }

    /// Central differences of H in (x, y) must reproduce the canonical
    /// equations: ∂H/∂y_k = j ω₀² k² q_k + rhs_k and ∂H/∂x_k its conjugate
    /// counterpart, to O(ε²).
    #[test]
    fn finite_difference_gradient_matches_equations_of_motion() {
        let eps = 1e-5;
        for (n, seed) in [(1usize, 11u64), (2, 12), (3, 13)] {
            let grid = ModeGrid::new(n, 0.8).unwrap();
            let s = sample_gaussian_spectrum(grid, 1.5, &mut NoiseStream::new(3, seed).rng())
                .unwrap();
            let z = 0.4;
            let q = s.coeffs().to_vec();
            let y: Vec<Complex64> = q.iter().map(|c| c.conj()).collect();
            let rhs = interaction_rhs_naive(&s, z);
            let w2 = grid.omega0() * grid.omega0();
            for k in 0..n {
                // dH/dy_k via complex-linear central difference (H is a
                // polynomial, so a real perturbation recovers the formal
                // partial derivative).
                let mut yp = y.clone();
                let mut ym = y.clone();
                yp[k] += Complex64::new(eps, 0.0);
                ym[k] -= Complex64::new(eps, 0.0);
                let dh_dy = (hamiltonian_xy(&grid, &q, &yp, z)
                    - hamiltonian_xy(&grid, &q, &ym, z))
                    / (2.0 * eps);
                let expected = Complex64::new(0.0, 1.0) * w2 * ((k + 1) * (k + 1)) as f64 * q[k]
                    + rhs[k];
                assert!(
                    (dh_dy - expected).norm() < 1e-7,
                    "n={n} k={k}: {dh_dy} vs {expected}"
                );

                let mut xp = q.clone();
                let mut xm = q.clone();
                xp[k] += Complex64::new(eps, 0.0);
                xm[k] -= Complex64::new(eps, 0.0);
                let dh_dx = (hamiltonian_xy(&grid, &xp, &y, z)
                    - hamiltonian_xy(&grid, &xm, &y, z))
                    / (2.0 * eps);
                // ẏ_k = -∂H/∂x_k must be the conjugate of ẋ_k on y = x*.
                assert!(
                    ((-dh_dx) - expected.conj()).norm() < 1e-7,
                    "conjugate leg n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn identity_flow_has_exactly_unit_jacobian() {
        // Dyadic coordinates and a dyadic eps make x ± ε exact, so the
        // finite-difference matrix of the zero-distance flow is exactly I.
        let grid = ModeGrid::new(2, 1.0).unwrap();
        let s = Spectrum::new(
            grid,
            vec![Complex64::new(0.5, -0.25), Complex64::new(0.125, 1.0)],
            0.0,
        )
        .unwrap();
        let params = ChannelParams {
            sigma0_sq: 0.0,
            z_total: 0.0,
            dz: 0.1,
            scheme: Scheme::Rk4Interaction,
            nonlinearity_on: true,
        };
        let eps = (2.0f64).powi(-17);
        assert_eq!(jacobian_det(&params, &s, eps).unwrap(), 1.0);
    }

    #[test]
    fn dispersion_only_flow_has_unit_jacobian() {
        let grid = ModeGrid::new(2, 1.0).unwrap();
        let s = sample_gaussian_spectrum(grid, 1.0, &mut NoiseStream::new(4, 0).rng()).unwrap();
        let params = ChannelParams {
            sigma0_sq: 0.0,
            z_total: 0.3,
            dz: 0.01,
            scheme: Scheme::SplitStep,
            nonlinearity_on: false,
        };
        let det = jacobian_det(&params, &s, default_fd_epsilon(&s)).unwrap();
        assert!((det - 1.0).abs() < 1e-8, "det = {det}");
    }

    #[test]
    fn full_flow_preserves_volume() {
        let grid = ModeGrid::new(2, 0.5).unwrap();
        let s = sample_gaussian_spectrum(grid, 1.0, &mut NoiseStream::new(8, 1).rng()).unwrap();
        let params = ChannelParams {
            sigma0_sq: 0.0,
            z_total: 0.1,
            dz: 1e-3,
            scheme: Scheme::Rk4Interaction,
            nonlinearity_on: true,
        };
        let det = jacobian_det(&params, &s, default_fd_epsilon(&s)).unwrap();
        assert!((det - 1.0).abs() < 1e-4, "det = {det}");
    }
}

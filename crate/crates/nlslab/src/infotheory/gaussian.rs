//! Gaussian-family helpers: sample covariances, Hermitian log-determinants
//! and the Gaussian plug-in entropy estimator.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{EntropyEstimate, Estimator, EstimatorError};
use crate::grid::Ensemble;

/// Centered complex sample covariance `K_ab = E[Q_a Q_b*] - E[Q_a]E[Q_b]*`
/// with population (1/M) normalization, so the diagonal never exceeds the
/// raw second moment.
pub fn complex_covariance(e: &Ensemble) -> Vec<Vec<Complex64>> {
    let n = e.grid().n();
    let m = e.len() as f64;
    let mut mean = vec![Complex64::new(0.0, 0.0); n];
    for s in e.members() {
        for (acc, c) in mean.iter_mut().zip(s.coeffs()) {
            *acc += c;
        }
    }
    for v in &mut mean {
        *v /= m;
    }
    let mut k = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for s in e.members() {
        let q = s.coeffs();
        for a in 0..n {
            let da = q[a] - mean[a];
            for b in a..n {
                k[a][b] += da * (q[b] - mean[b]).conj();
            }
        }
    }
    for a in 0..n {
        for b in a..n {
            k[a][b] /= m;
            if a != b {
                k[b][a] = k[a][b].conj();
            }
        }
    }
    k
}

/// Uncentered per-mode second moments `E|Q_k|²`.
pub fn second_moments(e: &Ensemble) -> Vec<f64> {
    let n = e.grid().n();
    let m = e.len() as f64;
    let mut out = vec![0.0; n];
    for s in e.members() {
        for (acc, c) in out.iter_mut().zip(s.coeffs()) {
            *acc += c.norm_sqr();
        }
    }
    for v in &mut out {
        *v /= m;
    }
    out
}

/// `ln det K` of a Hermitian positive-definite matrix via Cholesky.
/// Returns `None` when the factorization breaks down (singular or
/// indefinite input).
pub fn hermitian_log_det(k: &[Vec<Complex64>]) -> Option<f64> {
    let n = k.len();
    let mut l = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    let mut log_det = 0.0;
    for i in 0..n {
        for j in 0..=i {
            let mut sum = k[i][j];
            for p in 0..j {
                sum -= l[i][p] * l[j][p].conj();
            }
            if i == j {
                let d = sum.re;
                if !(d.is_finite() && d > 0.0) {
                    return None;
                }
                let root = d.sqrt();
                l[i][j] = Complex64::new(root, 0.0);
                log_det += d.ln();
            } else {
                l[i][j] = sum / l[j][j].re;
            }
        }
    }
    Some(log_det)
}

/// `ln pdet K`: sum of the logs of the strictly positive eigenvalues of a
/// Hermitian PSD matrix. Computed through the real symmetric embedding
/// `[[X, -Y], [Y, X]]`, whose spectrum is that of `K` doubled, so the log
/// pseudo-determinant is half the real one.
pub fn hermitian_log_pdet(k: &[Vec<Complex64>]) -> f64 {
    let n = k.len();
    let mut m = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for a in 0..n {
        for b in 0..n {
            m[(a, b)] = k[a][b].re;
            m[(n + a, n + b)] = k[a][b].re;
            m[(a, n + b)] = -k[a][b].im;
            m[(n + a, b)] = k[a][b].im;
        }
    }
    let eigen = m.symmetric_eigenvalues();
    let max = eigen.iter().cloned().fold(0.0f64, f64::max);
    let tol = max * 2.0 * n as f64 * f64::EPSILON;
    let mut log_pdet = 0.0;
    for lambda in eigen.iter() {
        if *lambda > tol {
            log_pdet += lambda.ln();
        }
    }
    log_pdet / 2.0
}

/// Gaussian plug-in entropy `½ ln((2πe)^d det Σ̂)` in nats over the real
/// coordinates, with subsample-split standard error.
pub fn gaussian_plugin_entropy(
    rows: &[Vec<f64>],
) -> Result<EntropyEstimate, EstimatorError> {
    let n = rows.len();
    if n < 100 {
        return Err(EstimatorError::TooFewSamples { got: n, need: 100 });
    }
    let d = rows[0].len();

    let point = |subset: &[&Vec<f64>]| -> Option<f64> {
        let m = subset.len() as f64;
        let mut mean = vec![0.0; d];
        for r in subset {
            for (acc, v) in mean.iter_mut().zip(r.iter()) {
                *acc += v;
            }
        }
        for v in &mut mean {
            *v /= m;
        }
        let mut sigma = DMatrix::<f64>::zeros(d, d);
        for r in subset {
            for a in 0..d {
                for b in 0..d {
                    sigma[(a, b)] += (r[a] - mean[a]) * (r[b] - mean[b]);
                }
            }
        }
        sigma /= m;
        let chol = sigma.cholesky()?;
        let log_det: f64 = chol.l().diagonal().iter().map(|v| 2.0 * v.ln()).sum();
        Some(0.5 * (d as f64 * (std::f64::consts::TAU * std::f64::consts::E).ln() + log_det))
    };

    let all: Vec<&Vec<f64>> = rows.iter().collect();
    let value = point(&all).ok_or(EstimatorError::SingularCovariance)?;

    let s = if n >= 800 { 8 } else { 4 };
    let mut split_values = Vec::with_capacity(s);
    for j in 0..s {
        let sub: Vec<&Vec<f64>> = rows.iter().skip(j).step_by(s).collect();
        split_values.push(point(&sub).ok_or(EstimatorError::SingularCovariance)?);
    }
    let mean: f64 = split_values.iter().sum::<f64>() / s as f64;
    let var: f64 =
        split_values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (s - 1) as f64;

    Ok(EntropyEstimate {
        value,
        stderr: (var / s as f64).sqrt(),
        estimator: Estimator::GaussianPlugin,
        sample_count: n,
        real_dims: d,
        degenerate: false,
    })
}

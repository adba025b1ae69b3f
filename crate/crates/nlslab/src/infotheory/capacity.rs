//! The `ln(1 + SNR)` capacity bound with `SNR = P0 / σ²(z)`.

use super::EstimatorError;

/// Capacity upper bound in nats per complex degree of freedom, with
/// accumulated noise power `σ²(z) = B σ₀² z`.
pub fn capacity_bound(p0: f64, sigma0_sq: f64, bandwidth: f64, z: f64) -> Result<f64, EstimatorError> {
    if !(p0.is_finite() && p0 >= 0.0) {
        return Err(EstimatorError::InvalidParameter {
            name: "p0",
            value: p0,
        });
    }
    let sigma_sq = bandwidth * sigma0_sq * z;
    if !(sigma_sq.is_finite() && sigma_sq > 0.0) {
        return Err(EstimatorError::InvalidParameter {
            name: "sigma_sq",
            value: sigma_sq,
        });
    }
    Ok((1.0 + p0 / sigma_sq).ln())
}

/// Nats → bits.
pub fn to_bits(nats: f64) -> f64 {
    nats / std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_point_evaluates_to_ln_two() {
        // P0=1, B=1, σ₀²=0.1, z=10 → σ²=1, bound = ln 2.
        let b = capacity_bound(1.0, 0.1, 1.0, 10.0).unwrap();
        assert!((b - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((to_bits(b) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_input_power_gives_zero_bound() {
        assert_eq!(capacity_bound(0.0, 1.0, 1.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn vanishing_noise_is_rejected() {
        assert!(capacity_bound(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(capacity_bound(1.0, 1.0, 1.0, 0.0).is_err());
    }
}

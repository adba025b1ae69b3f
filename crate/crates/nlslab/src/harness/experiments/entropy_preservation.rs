//! Entropy preservation: the differential entropy of a Gaussian ensemble
//! is unchanged by the deterministic flow, within estimator resolution.

use super::{propagate_ensemble, SuiteOutput, Tolerances};
use crate::harness::config::ExperimentConfig;
use crate::harness::report::{fmt_g17, Check, RawTable, Unit};
use crate::harness::HarnessError;
use crate::infotheory::conditional::domains;
use crate::infotheory::ensemble_entropy;
use crate::sampling::{sample_gaussian_input, NoiseStream};

pub fn run(cfg: &ExperimentConfig, tol: &Tolerances) -> Result<SuiteOutput, HarnessError> {
    let grid = cfg.mode_grid()?;
    let mut params = cfg.channel_params();
    params.sigma0_sq = 0.0;
    let diff_tol = tol["entropy_diff_tol"];

    let mut rng = NoiseStream::new(
        cfg.master_seed,
        domains::pack(domains::INPUT_POINTS, 0, 0),
    )
    .rng();
    let before = sample_gaussian_input(grid, cfg.p0, cfg.trials, &mut rng)?;
    let after = propagate_ensemble(&before, &params)?;

    let h_before = ensemble_entropy(&before, cfg.knn_k())?;
    let h_after = ensemble_entropy(&after, cfg.knn_k())?;
    let combined_se = (h_before.stderr.powi(2) + h_after.stderr.powi(2)).sqrt();

    let mut raw = RawTable::new(&["member", "input_power", "output_power"]);
    for (i, (b, a)) in before.members().iter().zip(after.members()).enumerate() {
        raw.push(vec![i.to_string(), fmt_g17(b.power()), fmt_g17(a.power())]);
    }

    let checks = vec![
        Check::close_to(
            "entropy_difference_after_flow",
            h_after.value - h_before.value,
            0.0,
            diff_tol,
            Some(combined_se),
            Unit::Nats,
        ),
        // The flow is unitary on power as well; a drifting ensemble power
        // would invalidate the comparison.
        Check::close_to(
            "mean_power_drift",
            after.mean_power() - before.mean_power(),
            0.0,
            1e-8 * before.mean_power(),
            None,
            Unit::Power,
        ),
    ];

    Ok((checks, raw))
}

//! Mutual information vs the `ln(1+SNR)` bound across SNR or distance.
//!
//! For an SNR sweep the accumulated noise power is fixed by the configured
//! channel and the input power is scaled to `SNR·σ²`; for a distance sweep
//! the input power is fixed and `σ²(z)` moves. At every point the estimate
//! must stay below the bound (plus slack); the linear channel must match
//! the bound within tolerance.

use super::{SuiteOutput, Tolerances};
use crate::harness::config::ExperimentConfig;
use crate::harness::report::{fmt_g17, Check, RawTable, Unit};
use crate::harness::HarnessError;
use crate::infotheory::{capacity_bound, mi_estimate, ChannelSpec};
use crate::sampling::substream_seed;

pub fn run(cfg: &ExperimentConfig, tol: &Tolerances) -> Result<SuiteOutput, HarnessError> {
    let grid = cfg.mode_grid()?;
    let margin_slack = tol["margin_slack"];
    let match_tol = tol["linear_match_tol"];

    // (snr, p0, params) per sweep point.
    let mut points = Vec::new();
    if let Some(snrs) = &cfg.snr_values {
        let params = cfg.channel_params();
        let sigma_sq = params.total_noise_power(&grid);
        for &snr in snrs {
            points.push((snr, snr * sigma_sq, params));
        }
    } else if let Some(zs) = &cfg.z_values {
        for &z in zs {
            let params = crate::propagator::ChannelParams {
                z_total: z,
                ..cfg.channel_params()
            };
            let sigma_sq = params.total_noise_power(&grid);
            points.push((cfg.p0 / sigma_sq, cfg.p0, params));
        }
    }

    let mut raw = RawTable::new(&["snr", "z", "mi_per_dof_nats", "stderr", "bound_nats", "margin"]);
    let mut checks = Vec::new();

    for (idx, (snr, p0, params)) in points.iter().enumerate() {
        let spec = ChannelSpec { grid, params: *params };
        let point_seed = substream_seed(cfg.master_seed, 0x53EE_u64 + idx as u64);
        let mi = mi_estimate(
            &spec,
            *p0,
            cfg.trials,
            cfg.input_points(),
            cfg.trials_per_point(),
            cfg.knn_k(),
            point_seed,
        )?;
        let bound = capacity_bound(*p0, params.sigma0_sq, grid.bandwidth(), params.z_total)?;
        let margin = bound - mi.per_dof;
        raw.push(vec![
            fmt_g17(*snr),
            fmt_g17(params.z_total),
            fmt_g17(mi.per_dof),
            fmt_g17(mi.stderr),
            fmt_g17(bound),
            fmt_g17(margin),
        ]);

        if params.nonlinearity_on {
            checks.push(Check::upper_bound(
                format!("mi_below_bound_snr{snr}"),
                mi.per_dof,
                bound,
                margin_slack,
                Some(mi.stderr),
                Unit::Nats,
            ));
        } else {
            checks.push(Check::close_to(
                format!("linear_mi_matches_bound_snr{snr}"),
                mi.per_dof,
                bound,
                match_tol,
                Some(mi.stderr),
                Unit::Nats,
            ));
        }
    }

    Ok((checks, raw))
}

//! Conditional-entropy lower bound: per complex degree of freedom the
//! conditional output entropy is at least the noise entropy rate
//! `C_n + ln σ²(z)`, with equality for the linear channel.

use super::{SuiteOutput, Tolerances};
use crate::grid::Spectrum;
use crate::harness::config::ExperimentConfig;
use crate::harness::report::{fmt_g17, Check, RawTable, Unit};
use crate::harness::HarnessError;
use crate::infotheory::conditional::domains;
use crate::infotheory::{conditional_entropy_estimate, ChannelSpec};
use crate::sampling::{sample_gaussian_spectrum, NoiseStream};

pub fn run(cfg: &ExperimentConfig, tol: &Tolerances) -> Result<SuiteOutput, HarnessError> {
    let grid = cfg.mode_grid()?;
    let bound_slack = tol["bound_slack"];
    let equality_tol = tol["linear_equality_tol"];

    let points: Vec<Spectrum> = (0..cfg.input_points())
        .map(|p| {
            let mut rng = NoiseStream::new(
                cfg.master_seed,
                domains::pack(domains::INPUT_POINTS, 0, p as u64),
            )
            .rng();
            sample_gaussian_spectrum(grid, cfg.p0, &mut rng)
        })
        .collect::<Result<_, _>>()?;

    let mut raw = RawTable::new(&["case", "point", "h_conditional_nats", "stderr"]);
    let mut checks = Vec::new();

    // The configured channel is checked against the bound; the linear
    // channel must sit on it. When the config is already linear only the
    // equality case remains.
    let cases: &[(&str, bool)] = if cfg.channel.nonlinearity_on {
        &[("configured", true), ("linear", false)]
    } else {
        &[("linear", false)]
    };
    for &(case, nonlinearity_on) in cases {
        let spec = ChannelSpec {
            grid,
            params: crate::propagator::ChannelParams {
                nonlinearity_on,
                ..cfg.channel_params()
            },
        };
        let ce = conditional_entropy_estimate(
            &spec,
            &points,
            cfg.trials_per_point(),
            cfg.knn_k(),
            cfg.master_seed,
        )?;
        for (p, h) in ce.per_point.iter().enumerate() {
            raw.push(vec![
                case.to_string(),
                p.to_string(),
                fmt_g17(*h),
                fmt_g17(ce.estimate.stderr),
            ]);
        }
        if nonlinearity_on {
            checks.push(Check::lower_bound(
                "conditional_entropy_rate_vs_noise_rate",
                ce.per_dof,
                ce.bound_per_dof,
                bound_slack,
                Some(ce.per_dof_stderr),
                Unit::Nats,
            ));
        } else {
            checks.push(Check::close_to(
                "linear_channel_equality",
                ce.per_dof,
                ce.bound_per_dof,
                equality_tol,
                Some(ce.per_dof_stderr),
                Unit::Nats,
            ));
        }
    }

    Ok((checks, raw))
}

//! Volume preservation: |det J| of the deterministic flow stays within
//! tolerance of 1 over a grid of mode counts, distances and random points.

use rayon::prelude::*;

use super::{SuiteOutput, Tolerances};
use crate::grid::ModeGrid;
use crate::harness::config::ExperimentConfig;
use crate::harness::report::{fmt_g17, Check, RawTable, Unit};
use crate::harness::HarnessError;
use crate::infotheory::conditional::domains;
use crate::propagator::{default_fd_epsilon, jacobian_det, ChannelParams};
use crate::sampling::{sample_gaussian_spectrum, NoiseStream};

pub fn run(cfg: &ExperimentConfig, tol: &Tolerances) -> Result<SuiteOutput, HarnessError> {
    let det_tol = tol["det_tolerance"];
    let sizes = cfg.jacobian_grid_sizes();
    let distances = cfg.jacobian_distances();
    let points = cfg.trials;

    let mut raw = RawTable::new(&["n", "z", "point", "det_jacobian"]);
    let mut checks = Vec::new();

    for (case, (n, z)) in sizes
        .iter()
        .flat_map(|&n| distances.iter().map(move |&z| (n, z)))
        .enumerate()
    {
        let grid = ModeGrid::new(n, cfg.grid.omega0)?;
        let params = ChannelParams {
            z_total: z,
            sigma0_sq: 0.0,
            ..cfg.channel_params()
        };
        let dets: Vec<f64> = (0..points)
            .into_par_iter()
            .map(|p| -> Result<f64, HarnessError> {
                let mut rng = NoiseStream::new(
                    cfg.master_seed,
                    domains::pack(domains::INPUT_POINTS, case as u64, p as u64),
                )
                .rng();
                let at = sample_gaussian_spectrum(grid, cfg.p0, &mut rng)?;
                Ok(jacobian_det(&params, &at, default_fd_epsilon(&at))?)
            })
            .collect::<Result<_, _>>()?;

        for (p, det) in dets.iter().enumerate() {
            raw.push(vec![
                n.to_string(),
                fmt_g17(z),
                p.to_string(),
                fmt_g17(*det),
            ]);
        }

        let worst = dets
            .iter()
            .map(|d| (d - 1.0).abs())
            .fold(0.0f64, f64::max);
        checks.push(Check::upper_bound(
            format!("max_abs_det_deviation_n{n}_z{z}"),
            worst,
            0.0,
            det_tol,
            None,
            Unit::Dimensionless,
        ));
    }

    Ok((checks, raw))
}

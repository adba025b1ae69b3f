//! Output-entropy chain on stochastic channel outputs: every consecutive
//! inequality of the bounding chain, term by term.

use rayon::prelude::*;

use super::{SuiteOutput, Tolerances};
use crate::grid::Ensemble;
use crate::harness::config::ExperimentConfig;
use crate::harness::report::{fmt_g17, Check, RawTable, Unit, Verdict};
use crate::harness::HarnessError;
use crate::infotheory::conditional::domains;
use crate::infotheory::output_entropy_chain;
use crate::propagator::propagate_stochastic;
use crate::sampling::{sample_gaussian_spectrum, NoiseStream};

pub fn run(cfg: &ExperimentConfig, tol: &Tolerances) -> Result<SuiteOutput, HarnessError> {
    let grid = cfg.mode_grid()?;
    let params = cfg.channel_params();
    let sigma_sq = params.total_noise_power(&grid);
    let mult = tol["stderr_multiplier"];

    let outputs: Vec<crate::grid::Spectrum> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| -> Result<crate::grid::Spectrum, HarnessError> {
            let mut rng = NoiseStream::new(
                cfg.master_seed,
                domains::pack(domains::OUTPUT_INPUT, 0, t as u64),
            )
            .rng();
            let input = sample_gaussian_spectrum(grid, cfg.p0, &mut rng)?;
            let ns = NoiseStream::new(
                cfg.master_seed,
                domains::pack(domains::OUTPUT_NOISE, 0, t as u64),
            );
            Ok(propagate_stochastic(&input, &params, &ns)?)
        })
        .collect::<Result<_, _>>()?;

    let mut raw = RawTable::new(&["trial", "output_power"]);
    for (t, s) in outputs.iter().enumerate() {
        raw.push(vec![t.to_string(), fmt_g17(s.power())]);
    }

    let ensemble = Ensemble::new(outputs)?;
    let report = output_entropy_chain(&ensemble, cfg.p0, sigma_sq, cfg.knn_k(), mult)?;

    let mut checks: Vec<Check> = report
        .steps
        .iter()
        .map(|s| Check {
            name: format!("chain_{}", s.name),
            measured: s.lhs,
            expected: s.rhs,
            tolerance: s.slack,
            stderr: None,
            unit: Unit::Nats,
            verdict: if s.holds { Verdict::Pass } else { Verdict::Fail },
        })
        .collect();
    checks.push(Check::boolean(
        "covariance_nonsingular",
        !report.singular_covariance,
    ));
    // The terminal bound value itself, for the record: C_n + ln(P0 + σ²).
    checks.push(Check::close_to(
        "chain_terminal_bound",
        report.power_bound,
        (std::f64::consts::PI * std::f64::consts::E / grid.n() as f64).ln()
            + (cfg.p0 + sigma_sq).ln(),
        1e-12,
        None,
        Unit::Nats,
    ));

    Ok((checks, raw))
}

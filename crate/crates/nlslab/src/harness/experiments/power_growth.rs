//! Power growth law: mean output power equals input power plus the
//! accumulated noise power `σ²(z) = B σ₀² z`, checked by Monte Carlo for a
//! Gaussian input and for the zero input.

use rayon::prelude::*;

use super::{mean_stderr, SuiteOutput, Tolerances};
use crate::grid::Spectrum;
use crate::harness::config::ExperimentConfig;
use crate::harness::report::{fmt_g17, Check, RawTable, Unit};
use crate::harness::HarnessError;
use crate::infotheory::conditional::domains;
use crate::propagator::propagate_stochastic;
use crate::sampling::{sample_gaussian_spectrum, NoiseStream};

pub fn run(cfg: &ExperimentConfig, tol: &Tolerances) -> Result<SuiteOutput, HarnessError> {
    let grid = cfg.mode_grid()?;
    let params = cfg.channel_params();
    let sigma_sq = params.total_noise_power(&grid);
    let mult = tol["stderr_multiplier"];

    let mut raw = RawTable::new(&["case", "trial", "input_power", "output_power"]);
    let mut checks = Vec::new();

    for (case, input_p0) in [("gaussian", Some(cfg.p0)), ("zero", None)] {
        let major = if input_p0.is_some() { 0 } else { 1 };
        let powers: Vec<(f64, f64)> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| -> Result<(f64, f64), HarnessError> {
                let input = match input_p0 {
                    Some(p0) => {
                        let mut rng = NoiseStream::new(
                            cfg.master_seed,
                            domains::pack(domains::OUTPUT_INPUT, major, t as u64),
                        )
                        .rng();
                        sample_gaussian_spectrum(grid, p0, &mut rng)?
                    }
                    None => Spectrum::zero(grid, 0.0),
                };
                let ns = NoiseStream::new(
                    cfg.master_seed,
                    domains::pack(domains::OUTPUT_NOISE, major, t as u64),
                );
                let out = propagate_stochastic(&input, &params, &ns)?;
                Ok((input.power(), out.power()))
            })
            .collect::<Result<_, _>>()?;

        for (t, (pin, pout)) in powers.iter().enumerate() {
            raw.push(vec![
                case.to_string(),
                t.to_string(),
                fmt_g17(*pin),
                fmt_g17(*pout),
            ]);
        }

        let outputs: Vec<f64> = powers.iter().map(|(_, p)| *p).collect();
        let (mean, se) = mean_stderr(&outputs);
        let expected = input_p0.unwrap_or(0.0) + sigma_sq;
        checks.push(Check::close_to(
            format!("{case}_input_mean_output_power"),
            mean,
            expected,
            mult * se,
            Some(se),
            Unit::Power,
        ));
    }

    Ok((checks, raw))
}

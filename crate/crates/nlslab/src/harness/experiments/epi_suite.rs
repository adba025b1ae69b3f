//! Entropy-power inequality spot checks on closed-form cases: Gaussian
//! pairs sit at equality, uniform pairs at a known positive gap, and a
//! deterministic summand leaves the entropy power unchanged.

use rand::Rng;
use rand_distr::StandardNormal;

use super::{SuiteOutput, Tolerances};
use crate::harness::config::ExperimentConfig;
use crate::harness::report::{fmt_g17, Check, RawTable, Unit};
use crate::harness::HarnessError;
use crate::infotheory::conditional::domains;
use crate::infotheory::{epi_gap, EpiGap};
use crate::sampling::NoiseStream;

/// Closed-form gap for independent U[0,1] summands: the sum is triangular
/// with h = 1/2 nat while each uniform has h = 0, so the gap is
/// `(1/2π)(1 − 2/e)`.
pub fn uniform_pair_gap() -> f64 {
    (1.0 - 2.0 / std::f64::consts::E) / std::f64::consts::TAU
}

fn gauss_rows<R: Rng>(rng: &mut R, count: usize, sigma: f64) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| vec![sigma * rng.sample::<f64, _>(StandardNormal)])
        .collect()
}

fn uniform_rows<R: Rng>(rng: &mut R, count: usize) -> Vec<Vec<f64>> {
    (0..count).map(|_| vec![rng.gen::<f64>()]).collect()
}

pub fn run(cfg: &ExperimentConfig, tol: &Tolerances) -> Result<SuiteOutput, HarnessError> {
    let mult = tol["stderr_multiplier"];
    let n = cfg.trials;
    let k = cfg.knn_k();

    let mut raw = RawTable::new(&[
        "case",
        "sigma_e_x",
        "sigma_e_y",
        "sigma_e_sum",
        "gap",
        "stderr",
    ]);
    let mut checks = Vec::new();
    let record = |name: &str, g: &EpiGap, raw: &mut RawTable| {
        raw.push(vec![
            name.to_string(),
            fmt_g17(g.sigma_e_x),
            fmt_g17(g.sigma_e_y),
            fmt_g17(g.sigma_e_sum),
            fmt_g17(g.gap),
            fmt_g17(g.stderr),
        ]);
    };

    // Independent Gaussians N(0,1), N(0,2): equality case, gap ~ 0.
    {
        let mut rx =
            NoiseStream::new(cfg.master_seed, domains::pack(domains::OUTPUT_INPUT, 0, 0)).rng();
        let mut ry =
            NoiseStream::new(cfg.master_seed, domains::pack(domains::OUTPUT_INPUT, 1, 0)).rng();
        let mut pair =
            NoiseStream::new(cfg.master_seed, domains::pack(domains::PAIRING, 0, 0)).rng();
        let x = gauss_rows(&mut rx, n, 1.0);
        let y = gauss_rows(&mut ry, n, 2.0f64.sqrt());
        let g = epi_gap(&x, &y, k, &mut pair)?;
        record("gaussian", &g, &mut raw);
        checks.push(Check::close_to(
            "gaussian_pair_gap",
            g.gap,
            0.0,
            mult * g.stderr,
            Some(g.stderr),
            Unit::Power,
        ));
    }

    // Independent uniforms on [0,1]: gap = (1/2π)(1 − 2/e).
    {
        let mut rx =
            NoiseStream::new(cfg.master_seed, domains::pack(domains::OUTPUT_INPUT, 2, 0)).rng();
        let mut ry =
            NoiseStream::new(cfg.master_seed, domains::pack(domains::OUTPUT_INPUT, 3, 0)).rng();
        let mut pair =
            NoiseStream::new(cfg.master_seed, domains::pack(domains::PAIRING, 1, 0)).rng();
        let x = uniform_rows(&mut rx, n);
        let y = uniform_rows(&mut ry, n);
        let g = epi_gap(&x, &y, k, &mut pair)?;
        record("uniform", &g, &mut raw);
        checks.push(Check::close_to(
            "uniform_pair_gap",
            g.gap,
            uniform_pair_gap(),
            mult * g.stderr,
            Some(g.stderr),
            Unit::Power,
        ));
    }

    // Deterministic summand: σ_e²(Y) = 0 and the gap vanishes.
    {
        let mut rx =
            NoiseStream::new(cfg.master_seed, domains::pack(domains::OUTPUT_INPUT, 4, 0)).rng();
        let mut pair =
            NoiseStream::new(cfg.master_seed, domains::pack(domains::PAIRING, 2, 0)).rng();
        let x = gauss_rows(&mut rx, n, 1.0);
        let y = vec![vec![2.5]; n];
        let g = epi_gap(&x, &y, k, &mut pair)?;
        record("constant", &g, &mut raw);
        checks.push(Check::close_to(
            "constant_summand_gap",
            g.gap,
            0.0,
            1e-9,
            None,
            Unit::Power,
        ));
        checks.push(Check::close_to(
            "constant_summand_entropy_power",
            g.sigma_e_y,
            0.0,
            0.0,
            None,
            Unit::Power,
        ));
    }

    Ok((checks, raw))
}

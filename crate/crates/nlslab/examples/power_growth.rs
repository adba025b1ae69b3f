//! Monte Carlo power growth through the stochastic channel.
//!
//! The deterministic part of every step is norm-preserving and the added
//! noise is independent of the state, so the mean output power is exactly
//! P(0) + B·σ₀²·z at any distance. The table tracks that law over z.
//!
//! Run: cargo run --release -p nlslab --example power_growth

use nlslab::{
    propagate_stochastic, sample_gaussian_spectrum, ChannelParams, ModeGrid, NoiseStream, Scheme,
};

fn main() {
    let grid = ModeGrid::new(8, 0.25).unwrap();
    let p0 = 1.0;
    let sigma0_sq = std::f64::consts::PI; // B·σ₀² = 1 on this grid
    let trials = 4000;

    println!(
        "n = 8, P0 = {p0}, B = {:.4}, σ₀² = {sigma0_sq:.4}, {trials} trials per row\n",
        grid.bandwidth()
    );
    println!(
        "{:>6} {:>12} {:>12} {:>10}",
        "z", "mean P(z)", "P0 + σ²(z)", "stderr"
    );

    for steps in [5u64, 10, 20, 40] {
        let z = steps as f64 * 0.0125;
        let params = ChannelParams {
            sigma0_sq,
            z_total: z,
            dz: 0.0125,
            scheme: Scheme::SplitStep,
            nonlinearity_on: true,
        };
        let powers: Vec<f64> = (0..trials)
            .map(|t| {
                let input = sample_gaussian_spectrum(
                    grid,
                    p0,
                    &mut NoiseStream::new(11, 1_000_000 + t).rng(),
                )
                .unwrap();
                propagate_stochastic(&input, &params, &NoiseStream::new(11, t))
                    .unwrap()
                    .power()
            })
            .collect();
        let m = trials as f64;
        let mean = powers.iter().sum::<f64>() / m;
        let var = powers.iter().map(|p| (p - mean) * (p - mean)).sum::<f64>() / (m - 1.0);
        let expected = p0 + grid.bandwidth() * sigma0_sq * z;
        println!(
            "{z:>6.3} {mean:>12.5} {expected:>12.5} {:>10.2e}",
            (var / m).sqrt()
        );
    }
}

//! Mutual information against the ln(1+SNR) capacity bound.
//!
//! With a Gaussian input, the linear channel achieves ln(1+SNR) exactly;
//! the nonlinear channel with the same Gaussian input falls increasingly
//! short of it as SNR grows, and never exceeds it.
//!
//! Run: cargo run --release -p nlslab --example mi_vs_capacity

use nlslab::infotheory::{capacity_bound, mi_estimate, ChannelSpec};
use nlslab::{ChannelParams, ModeGrid, Scheme};

fn main() {
    let grid = ModeGrid::new(1, std::f64::consts::TAU).unwrap(); // B = 1
    let base = ChannelParams {
        sigma0_sq: 1.0,
        z_total: 0.25, // σ²(z) = 0.25
        dz: 0.0125,
        scheme: Scheme::SplitStep,
        nonlinearity_on: true,
    };
    let sigma_sq = 0.25;

    println!("n = 1, σ²(z) = {sigma_sq}, Gaussian input, nats per dof\n");
    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>10}",
        "SNR", "I linear", "I nls", "ln(1+SNR)", "margin"
    );

    for snr in [1.0, 2.0, 4.0, 8.0] {
        let p0 = snr * sigma_sq;
        let bound = capacity_bound(p0, base.sigma0_sq, grid.bandwidth(), base.z_total).unwrap();
        let mut row = Vec::new();
        for nonlinearity_on in [false, true] {
            let spec = ChannelSpec {
                grid,
                params: ChannelParams {
                    nonlinearity_on,
                    ..base
                },
            };
            let mi = mi_estimate(&spec, p0, 12_000, 12, 3000, 5, 101).unwrap();
            row.push(mi.per_dof);
        }
        println!(
            "{snr:>5.1} {:>12.4} {:>12.4} {bound:>12.4} {:>+10.4}",
            row[0],
            row[1],
            bound - row[1]
        );
    }
    println!("\nThe nonlinear margin is nonnegative at every point: the");
    println!("nonlinearity brings no capacity gain over the linear channel.");
}

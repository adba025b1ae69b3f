//! Cross-validation of the two integrators by step halving.
//!
//! The split-step scheme is second order in dz, the interaction-picture
//! RK4 fourth order. Errors against a fine reference must fall at those
//! rates, and the two schemes must converge to the same mode system —
//! that is the whole point of keeping two of them.
//!
//! Run: cargo run --release -p nlslab --example scheme_convergence

use nlslab::{
    propagate_deterministic, sample_gaussian_spectrum, ChannelParams, ModeGrid, NoiseStream,
    Scheme, Spectrum,
};

fn rel_dev(a: &Spectrum, b: &Spectrum) -> f64 {
    let num: f64 = a
        .coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    num / b.power().sqrt()
}

fn main() {
    let grid = ModeGrid::new(8, 0.2).unwrap();
    let input = sample_gaussian_spectrum(grid, 2.0, &mut NoiseStream::new(6, 0).rng()).unwrap();
    let z = 0.2;
    let params = |scheme, steps: u32| ChannelParams {
        sigma0_sq: 0.0,
        z_total: z,
        dz: z / steps as f64,
        scheme,
        nonlinearity_on: true,
    };

    let reference =
        propagate_deterministic(&input, &params(Scheme::Rk4Interaction, 2048)).unwrap();

    println!("n = 8, P0 = 2, z = {z}; reference: RK4 with 2048 steps\n");
    println!(
        "{:<16} {:>6} {:>12} {:>8}",
        "scheme", "steps", "rel. error", "order"
    );
    for (scheme, order) in [(Scheme::SplitStep, 2.0), (Scheme::Rk4Interaction, 4.0)] {
        let mut last: Option<f64> = None;
        for steps in [16u32, 32, 64, 128] {
            let out = propagate_deterministic(&input, &params(scheme, steps)).unwrap();
            let err = rel_dev(&out, &reference);
            let slope = last
                .map(|prev| format!("{:.2}", (prev / err).log2()))
                .unwrap_or_else(|| "-".into());
            println!("{:<16} {:>6} {:>12.3e} {:>8}", format!("{scheme:?}"), steps, err, slope);
            last = Some(err);
        }
        println!("(theoretical order {order})\n");
    }
}

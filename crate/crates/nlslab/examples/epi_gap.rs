//! Entropy power inequality on closed-form cases.
//!
//! σ_e²(X+Y) ≥ σ_e²(X) + σ_e²(Y) for independent X and Y. Gaussians with
//! proportional covariances are the equality case; independent uniforms
//! on [0,1] leave a gap of (1/2π)(1 − 2/e) ≈ 0.04206 because their sum is
//! triangular (h = 1/2 nat) while each uniform has h = 0.
//!
//! Run: cargo run --release -p nlslab --example epi_gap

use nlslab::infotheory::epi_gap;
use nlslab::NoiseStream;
use rand::Rng;
use rand_distr::StandardNormal;

fn main() {
    let n = 50_000;
    let mut rng = NoiseStream::new(89, 0).rng();

    let gauss = |rng: &mut rand_chacha::ChaCha8Rng, sigma: f64| -> Vec<Vec<f64>> {
        (0..n)
            .map(|_| vec![sigma * rng.sample::<f64, _>(StandardNormal)])
            .collect()
    };
    let uniform =
        |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<Vec<f64>> { (0..n).map(|_| vec![rng.gen::<f64>()]).collect() };

    println!("{n} samples per variable, k = 5\n");
    println!(
        "{:<22} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "case", "σe²(X)", "σe²(Y)", "σe²(X+Y)", "gap", "expected"
    );

    let cases: Vec<(&str, Vec<Vec<f64>>, Vec<Vec<f64>>, f64)> = vec![
        (
            "gaussian N(0,1)+N(0,2)",
            gauss(&mut rng, 1.0),
            gauss(&mut rng, 2.0f64.sqrt()),
            0.0,
        ),
        (
            "uniform U[0,1]+U[0,1]",
            uniform(&mut rng),
            uniform(&mut rng),
            (1.0 - 2.0 / std::f64::consts::E) / std::f64::consts::TAU,
        ),
        ("constant summand", gauss(&mut rng, 1.0), vec![vec![2.5]; n], 0.0),
    ];

    for (name, x, y, expected) in cases {
        let g = epi_gap(&x, &y, 5, &mut rng).unwrap();
        println!(
            "{:<22} {:>10.4} {:>10.4} {:>10.4} {:>+10.4} {:>10.4}",
            name, g.sigma_e_x, g.sigma_e_y, g.sigma_e_sum, g.gap, expected
        );
    }
}

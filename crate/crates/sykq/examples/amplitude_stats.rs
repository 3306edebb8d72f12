//! Sweep the depth of the random preparation circuit and watch its index
//! amplitudes converge to the statistics of a Gaussian coupling ensemble:
//! Kolmogorov-Smirnov distance to Normal(0, 1/L) and the rms/mean-abs
//! overhead ratio approaching sqrt(pi/2).
//!
//! Run with: cargo run --release --example amplitude_stats

use sykq::oracles::{amplitude_readback, build_a_random, build_b};
use sykq::stats::{ks_distance, mean, mean_abs, mean_square, normal_cdf};
use sykq::sykmodel::RegisterLayout;

fn main() -> sykq::Result<()> {
    let layout = RegisterLayout::for_modes(4)?;
    let l = layout.index_dim();
    let sigma = (1.0 / l as f64).sqrt();
    let n_seeds = 20u64;
    println!(
        "{} index qubits, L = {}, pooling {} seeds per depth",
        layout.n_index(),
        l,
        n_seeds
    );

    println!("depth   KS vs Normal(0,1/L)   rms/mean|.|  (target {:.4})",
        (std::f64::consts::PI / 2.0).sqrt());
    for depth in [1u32, 2, 4, 8, 16, 32, 64] {
        let mut pooled = Vec::with_capacity(l * n_seeds as usize);
        let mut ratios = Vec::with_capacity(n_seeds as usize);
        for s in 0..n_seeds {
            let circ = build_a_random(&layout, depth, 7 + s)?;
            let alpha = amplitude_readback(&circ)?;
            ratios.push(mean_square(&alpha).sqrt() / mean_abs(&alpha));
            pooled.extend_from_slice(&alpha);
        }
        let ks = ks_distance(&pooled, |x| normal_cdf(x, 0.0, sigma));
        println!("{:5}   {:.4}                {:.4}", depth, ks, mean(&ratios));
    }

    // For contrast: a uniform superposition has every |alpha_i| equal, so
    // its overhead ratio is exactly 1.
    let uniform = amplitude_readback(&build_b(layout.n_index()))?;
    println!(
        "uniform preparation ratio = {:.4}",
        mean_square(&uniform).sqrt() / mean_abs(&uniform)
    );
    Ok(())
}

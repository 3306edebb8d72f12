//! Synthesize exp(-iHt) from a truncated Jacobi-Anger expansion over walk
//! projections and compare it against dense matrix exponentiation, on both
//! the classical Chebyshev path and the walk-projection path.
//!
//! Run with: cargo run --example evolve

use num_complex::Complex64;
use sykq::evolution::{make_plan, synthesize_evolution, CutoffStrategy, SynthesisPath};
use sykq::oracles::BlockEncoding;
use sykq::simkernel::exact_expm;
use sykq::sykmodel::{sample_couplings, IndexMode};

fn main() -> sykq::Result<()> {
    let inst = sample_couplings(6, 1.0, IndexMode::DistinctSorted, 7)?;
    let enc = BlockEncoding::with_exact_prep(inst)?;
    let lambda = enc.lambda();

    let lambda_t = 5.0;
    let epsilon = 1e-6;
    let t = lambda_t / lambda;
    println!("lambda = {:.4}, target lambda*t = {}, epsilon = {:.0e}", lambda, lambda_t, epsilon);

    let plan = make_plan(lambda_t, epsilon, CutoffStrategy::Bruteforce)?;
    println!(
        "expansion cutoff K = {} ({} coefficients), tail bound = {:.3e}",
        plan.k,
        plan.coeffs.len(),
        plan.tail_bound()
    );

    let exact = exact_expm(&enc.target_hamiltonian()?, t)?;
    let classical = synthesize_evolution(&enc, t, epsilon, SynthesisPath::Classical)?;
    let walk = synthesize_evolution(&enc, t, epsilon, SynthesisPath::Walk)?;

    let mut err = classical.clone();
    err.add_scaled(&exact, Complex64::new(-1.0, 0.0));
    println!("classical path vs expm   = {:.3e}  (must be <= {:.0e})", err.spectral_norm(), epsilon);

    let mut agree = classical;
    agree.add_scaled(&walk, Complex64::new(-1.0, 0.0));
    println!("classical vs walk path   = {:.3e}", agree.spectral_norm());
    Ok(())
}

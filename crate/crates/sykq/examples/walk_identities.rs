//! Verify the two defining properties of the qubitized walk: projected
//! powers reproduce Chebyshev polynomials of the encoded Hamiltonian, and
//! every eigenphase is an arccosine of a rescaled eigenvalue.
//!
//! Run with: cargo run --example walk_identities

use num_complex::Complex64;
use sykq::oracles::BlockEncoding;
use sykq::sykmodel::{sample_couplings, IndexMode};
use sykq::walk::{chebyshev_t_matrices, walk_eigenphase_check, WalkOperator};

fn main() -> sykq::Result<()> {
    let inst = sample_couplings(6, 1.0, IndexMode::DistinctSorted, 7)?;
    let enc = BlockEncoding::with_exact_prep(inst)?;
    let walk = WalkOperator::new(&enc)?;

    // <G| W^n |G> = T_n(H / lambda), checked against an explicit matrix
    // recursion for the Chebyshev polynomials.
    let n_max = 16;
    let h = enc.normalized_block()?;
    let reference = chebyshev_t_matrices(&h, n_max);
    let projected = walk.chebyshev_projections(n_max)?;
    let mut worst = 0.0f64;
    for (n, (p, t)) in projected.iter().zip(reference.iter()).enumerate() {
        let mut diff = p.clone();
        diff.add_scaled(t, Complex64::new(-1.0, 0.0));
        let err = diff.spectral_norm();
        if n % 4 == 0 {
            println!("order {:2}: projection error = {:.3e}", n, err);
        }
        worst = worst.max(err);
    }
    println!("worst projection error over n <= {} = {:.3e}", n_max, worst);

    // Each eigenvalue h_i of the block lifts to the eigenphase pair
    // +/- arccos(h_i / lambda) of the walk.
    let report = walk_eigenphase_check(&walk)?;
    println!(
        "eigenphases: {} values, invariance residual = {:.3e}, phase error = {:.3e}, paired = {}",
        report.rows.len(),
        report.max_invariance_residual,
        report.max_phase_error,
        report.paired
    );
    for (x, expected, got) in report.rows.iter().take(4) {
        println!(
            "  h/lambda = {:+.6}  arccos = {:.6}  walk phase = {:.6}  |diff| = {:.3e}",
            x,
            expected,
            got,
            (expected - got).abs()
        );
    }
    Ok(())
}

//! Check the amplitude-amplification identities for the flagless walk
//! S = B' V A: projecting one amplification step to the index-zero block
//! produces Chebyshev polynomials of the encoded block, on even and odd
//! half-steps alike.
//!
//! Run with: cargo run --example oaa_identities

use sykq::oracles::BlockEncoding;
use sykq::sykmodel::{sample_couplings, IndexMode};
use sykq::walk::{verify_oaa_identities, OaaWalk};

fn main() -> sykq::Result<()> {
    let inst = sample_couplings(4, 1.0, IndexMode::DistinctSorted, 7)?;
    let enc = BlockEncoding::with_exact_prep(inst)?;
    let oaa = OaaWalk::new(&enc)?;
    println!(
        "flagless walk register: {} qubits (dimension {})",
        oaa.n_qubits(),
        oaa.dim()
    );

    let report = verify_oaa_identities(&oaa, 6)?;
    println!("m   even (projected)  odd (projected)  even (operator)  odd (operator)");
    for (m, ep, op, eo, oo) in &report.per_m {
        println!("{}   {:.3e}          {:.3e}        {:.3e}        {:.3e}", m, ep, op, eo, oo);
    }
    println!(
        "worst: even proj {:.3e}, odd proj {:.3e}, even op {:.3e}, odd op {:.3e}",
        report.max_even_projected,
        report.max_odd_projected,
        report.max_even_operator,
        report.max_odd_operator
    );
    Ok(())
}

//! Compile the select operator to Clifford + AND gates, read the T count
//! off the gate ledger, and cross-check the compiled circuit's action
//! against the semantic (Pauli-table) select.
//!
//! Run with: cargo run --example select_compile

use num_complex::Complex64;
use sykq::oracles::{build_select_gates, per_majorana_t_count, SemanticSelect};
use sykq::simkernel::{StateOp, StateVector};
use sykq::sykmodel::RegisterLayout;

fn main() -> sykq::Result<()> {
    println!("{:>4}  {:>12}  {:>9}  {:>7}", "N", "T/Majorana", "T total", "4N-4");
    for n in [2u32, 4, 8, 16, 32] {
        let per = per_majorana_t_count(n)?;
        let circ = build_select_gates(n)?;
        println!("{:>4}  {:>12}  {:>9}  {:>7}", n, per, circ.t_count(), 4 * n - 4);
    }

    // Action check at N = 4: run the compiled circuit on basis states of the
    // (system + index) block and compare with the Pauli-table select applied
    // to the same block. The ladder ancillas and enable line must return to
    // their initial values (no leakage outside the block).
    let n = 4u32;
    let layout = RegisterLayout::for_modes(n)?;
    let circ = build_select_gates(n)?;
    let semantic = SemanticSelect::build(layout);
    let block_qubits = layout.n_system() + layout.n_index();
    let block_dim = 1usize << block_qubits;

    let mut worst = 0.0f64;
    let mut leaked = 0.0f64;
    for col in 0..block_dim {
        let mut gate_state = StateVector::basis_state(layout.select_width(), col);
        circ.run(&mut gate_state)?;

        let mut sem_state = StateVector::basis_state(block_qubits, col);
        semantic.apply(&mut sem_state)?;

        for row in 0..gate_state.dim() {
            let want = if row < block_dim { sem_state.amp(row) } else { Complex64::new(0.0, 0.0) };
            let diff = (gate_state.amp(row) - want).norm();
            if row < block_dim {
                worst = worst.max(diff);
            } else {
                leaked += gate_state.amp(row).norm_sqr();
            }
        }
    }
    println!();
    println!("N = {}: compiled vs semantic select, worst entry diff = {:.3e}", n, worst);
    println!("probability leaked outside the block = {:.3e}", leaked);

    // The exported listing is plain text, one gate per line.
    let listing = circ.export();
    println!();
    println!("first gates of the compiled circuit:");
    for line in listing.lines().take(6) {
        println!("  {}", line);
    }
    Ok(())
}

//! Operator abstraction and block extraction.
//!
//! Oracles in this crate are not all gate lists: the exact state-preparation
//! oracle is a dense reflection on the index register, and the instance
//! select is a table-driven Pauli pass. [`StateOp`] is the common face they
//! share with ordinary circuits, and [`extract_operator`] turns any of them
//! into the dense system-space block ⟨bra_anc| Op |ket_anc⟩ by running one
//! simulation per system basis column.

use num_complex::Complex64;

use crate::error::{Result, SykError};
use crate::simkernel::circuit::Circuit;
use crate::simkernel::dense::DenseOperator;
use crate::simkernel::state::StateVector;

/// Anything that can act unitarily on a state vector of a fixed width.
pub trait StateOp {
    fn n_qubits(&self) -> u32;

    fn apply(&self, state: &mut StateVector) -> Result<()>;

    fn apply_inverse(&self, state: &mut StateVector) -> Result<()>;
}

impl StateOp for Circuit {
    fn n_qubits(&self) -> u32 {
        Circuit::n_qubits(self)
    }

    fn apply(&self, state: &mut StateVector) -> Result<()> {
        self.run(state)
    }

    fn apply_inverse(&self, state: &mut StateVector) -> Result<()> {
        self.adjoint().run(state)
    }
}

/// Build |anc> ⊗ |sys_basis> on a register whose low `n_system` qubits are
/// the system block and whose high qubits hold the ancilla state.
pub fn ancilla_times_basis(anc: &StateVector, n_system: u32, sys_index: usize) -> StateVector {
    let total = anc.n_qubits() + n_system;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << total];
    for (a, &amp) in anc.amps().iter().enumerate() {
        if amp.norm_sqr() > 0.0 {
            amps[(a << n_system) | sys_index] = amp;
        }
    }
    StateVector::from_amplitudes(total, amps).expect("constructed length is consistent")
}

/// Dense system-space block ⟨bra_anc| op |ket_anc⟩.
///
/// The operator's register splits as [system: low qubits][ancilla: high
/// qubits]; `bra_anc` and `ket_anc` live on the ancilla block. Column `j` of
/// the result is obtained by running `op` on |ket_anc>⊗|j> and projecting
/// every row onto ⟨bra_anc|⊗⟨i|.
pub fn extract_operator(
    op: &dyn StateOp,
    n_system: u32,
    bra_anc: &StateVector,
    ket_anc: &StateVector,
) -> Result<DenseOperator> {
    let n_anc = op.n_qubits().checked_sub(n_system).ok_or(SykError::WidthMismatch {
        expected: n_system,
        actual: op.n_qubits(),
    })?;
    if bra_anc.n_qubits() != n_anc || ket_anc.n_qubits() != n_anc {
        return Err(SykError::WidthMismatch { expected: n_anc, actual: bra_anc.n_qubits() });
    }
    for anc in [bra_anc, ket_anc] {
        let dev = (anc.norm() - 1.0).abs();
        if dev > 1e-10 {
            return Err(SykError::NotNormalized { deviation: dev, tolerance: 1e-10 });
        }
    }
    let sys_dim = 1usize << n_system;
    let mut out = DenseOperator::zeros(sys_dim);
    // Indices of nonzero bra amplitudes, so the projection loop skips the
    // (typically almost all-zero) ancilla space.
    let bra_support: Vec<(usize, Complex64)> = bra_anc
        .amps()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(i, a)| (i, a.conj()))
        .collect();
    for col in 0..sys_dim {
        let mut state = ancilla_times_basis(ket_anc, n_system, col);
        op.apply(&mut state)?;
        for row in 0..sys_dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(a, bconj) in &bra_support {
                acc += bconj * state.amp((a << n_system) | row);
            }
            out.set(row, col, acc);
        }
    }
    Ok(out)
}

//! Ordered gate lists with validated construction, adjoints, T ledgers,
//! and a plain-text export format.

use num_complex::Complex64;

use crate::error::{Result, SykError};
use crate::simkernel::gate::{Gate, NORM_REJECT_TOLERANCE};
use crate::simkernel::state::StateVector;

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: u32,
    gates: Vec<Gate>,
    label: String,
}

impl Circuit {
    pub fn new(n_qubits: u32, label: impl Into<String>) -> Self {
        Circuit { n_qubits, gates: Vec::new(), label: label.into() }
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    /// A circuit with no gates is a perfectly good identity.
    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Append a gate after validating it against this circuit's width.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// The inverse circuit: gates reversed, each replaced by its adjoint.
    pub fn adjoint(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::adjoint).collect(),
            label: format!("{}^dag", self.label),
        }
    }

    /// Total T ledger: 1 per T/T†, 4 per AND compute (uncompute free),
    /// 4 per bare Toffoli.
    pub fn t_count(&self) -> u64 {
        self.gates.iter().map(Gate::t_value).sum()
    }

    /// Remap every qubit index upward by `offset`, for embedding a circuit
    /// built on a small register into a larger one.
    pub fn shifted(&self, offset: u32, new_width: u32) -> Result<Circuit> {
        let mut out = Circuit::new(new_width, self.label.clone());
        for g in &self.gates {
            let mut g2 = g.clone();
            for t in &mut g2.targets {
                *t += offset;
            }
            for c in &mut g2.controls {
                c.qubit += offset;
            }
            out.push(g2)?;
        }
        Ok(out)
    }

    /// Run the circuit on a state. The input norm is checked once here;
    /// the per-gate hot path is unchecked (construction already validated
    /// every gate).
    pub fn run(&self, state: &mut StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(SykError::WidthMismatch {
                expected: self.n_qubits,
                actual: state.n_qubits(),
            });
        }
        let deviation = (state.norm() - 1.0).abs();
        if deviation > NORM_REJECT_TOLERANCE {
            return Err(SykError::NotNormalized { deviation, tolerance: NORM_REJECT_TOLERANCE });
        }
        self.run_unchecked(state.amps_mut());
        Ok(())
    }

    /// Hot path: apply all gates to a raw amplitude block. The block length
    /// must be 2^width for the width this circuit was built on; used both by
    /// `run` and by callers embedding the circuit into a sub-block of a
    /// larger register.
    pub(crate) fn run_unchecked(&self, amps: &mut [Complex64]) {
        debug_assert_eq!(amps.len(), 1usize << self.n_qubits);
        for g in &self.gates {
            g.apply_to_amps(amps);
        }
    }

    /// Plain-text export: a header line, then one line per gate in order.
    /// The format is stable so exports can be diffed across runs.
    pub fn export(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# circuit {} qubits={} gates={} t_count={}\n",
            self.label,
            self.n_qubits,
            self.gates.len(),
            self.t_count()
        ));
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

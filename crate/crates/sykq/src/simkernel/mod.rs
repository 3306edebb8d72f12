//! Dense state-vector simulation engine: states, gates, circuits, Pauli
//! strings, dense verification matrices, and operator extraction by
//! ancilla projection.

pub mod circuit;
pub mod dense;
pub mod gate;
pub mod ops;
pub mod pauli;
pub mod state;

pub use circuit::Circuit;
pub use dense::{exact_expm, DenseOperator};
pub use gate::{apply_gate, Control, Gate, GateKind};
pub use ops::{ancilla_times_basis, extract_operator, StateOp};
pub use pauli::{apply_pauli_string, PauliString};
pub use state::StateVector;

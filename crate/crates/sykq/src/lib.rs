//! Desk-scale simulation laboratory and fault-tolerant resource estimator
//! for SYK Hamiltonian simulation by asymmetric qubitization.
//!
//! The crate builds the whole pipeline at sizes a laptop can exactly verify:
//!
//! * [`simkernel`]: dense state vectors, gates, circuits, Pauli strings,
//!   and a Hermitian eigensolver used as ground truth.
//! * [`sykmodel`]: SYK coupling ensembles, Majorana strings, register
//!   bookkeeping, and the rescaling factor λ.
//! * [`oracles`]: the asymmetric block encoding U = CPrep† · X_flag · V ·
//!   CPrep with exact (Householder) or random-circuit state preparation,
//!   plus semantic and gate-compiled select oracles.
//! * [`walk`]: the qubitized walk W = R·U, its Chebyshev polynomial
//!   projections, eigenphase checks, and the flagless amplification walk.
//! * [`evolution`]: Jacobi-Anger truncation (Bessel weights, cutoff
//!   selection) and time evolution through the walk or a classical
//!   Chebyshev recursion.
//! * [`resources`]: closed-form T-gate and query ledgers at fault-tolerant
//!   scale.
//! * [`cli`]: the `sykq` command-line front end with deterministic reports.
//!
//! Every runnable capability has an example under `examples/`; the
//! acceptance suite in `tests/` pins the numbers end to end.

// The dense kernels index matrices and state vectors the way the math is
// written; iterator rewrites of those loops obscure the row/column roles.
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod evolution;
pub mod oracles;
pub mod resources;
pub mod rng;
pub mod simkernel;
pub mod stats;
pub mod sykmodel;
pub mod walk;

pub use error::{Result, SykError};

//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong when building instances, oracles, or
/// running the simulator. Tolerance *failures* are not errors: checks
/// report their residuals and let the caller decide. Errors are reserved
/// for inputs that make an operation meaningless.
#[derive(Debug, Error)]
pub enum SykError {
    #[error("qubit index {index} out of range for a {width}-qubit register")]
    QubitOutOfRange { index: u32, width: u32 },

    #[error("gate touches qubit {0} more than once")]
    DuplicateQubit(u32),

    #[error("register width mismatch: expected {expected} qubits, got {actual}")]
    WidthMismatch { expected: u32, actual: u32 },

    #[error("state norm deviates from 1 by {deviation:.3e}, beyond tolerance {tolerance:.1e}")]
    NotNormalized { deviation: f64, tolerance: f64 },

    #[error("operator is not Hermitian: max |M - M^dagger| entry = {defect:.3e}")]
    NotHermitian { defect: f64 },

    #[error("amplitude has nonzero imaginary part {imag:.3e}; expected a real state")]
    ComplexAmplitude { imag: f64 },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eigensolver failed to converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("register too wide for dense simulation: {0} qubits (limit {1})")]
    TooWide(u32, u32),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, SykError>;

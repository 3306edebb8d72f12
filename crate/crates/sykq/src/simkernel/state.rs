//! Dense state vector over a register of qubits.
//!
//! Bit convention, used everywhere in this crate: qubit `q` is bit `q` of the
//! amplitude index, so qubit 0 is the least significant bit. The basis label
//! printed as |b_{n-1} ... b_1 b_0> therefore reads the index in binary.

use num_complex::Complex64;

use crate::error::{Result, SykError};

/// Widest register the dense engine accepts. 2^30 amplitudes is 16 GiB and
/// already out of reach on a desk machine; the bound mostly guards against
/// shift overflow from nonsense inputs.
pub const MAX_QUBITS: u32 = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: u32,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// |0...0> on `n_qubits` qubits.
    pub fn zero_state(n_qubits: u32) -> Self {
        Self::basis_state(n_qubits, 0)
    }

    /// Computational basis state |index>.
    pub fn basis_state(n_qubits: u32, index: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&n_qubits), "unsupported width {n_qubits}");
        let dim = 1usize << n_qubits;
        assert!(index < dim, "basis index {index} out of range for {n_qubits} qubits");
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { n_qubits, amps }
    }

    /// Wrap an explicit amplitude vector. The length must be a power of two
    /// matching `n_qubits`; the norm is the caller's business.
    pub fn from_amplitudes(n_qubits: u32, amps: Vec<Complex64>) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n_qubits) {
            return Err(SykError::TooWide(n_qubits, MAX_QUBITS));
        }
        let dim = 1usize << n_qubits;
        if amps.len() != dim {
            return Err(SykError::InvalidArgument(format!(
                "amplitude vector has length {}, expected 2^{} = {}",
                amps.len(),
                n_qubits,
                dim
            )));
        }
        Ok(StateVector { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// <self|other>.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(SykError::WidthMismatch {
                expected: self.n_qubits,
                actual: other.n_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Max-norm distance between two states, for test assertions.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        assert_eq!(self.n_qubits, other.n_qubits);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Normalized state with amplitudes drawn i.i.d. complex Gaussian; a
    /// generic probe for operator-identity checks.
    pub fn random_state(n_qubits: u32, seed: u64) -> Self {
        let mut g = crate::rng::GaussianStream::new(seed);
        let dim = 1usize << n_qubits;
        let mut amps = Vec::with_capacity(dim);
        for _ in 0..dim {
            amps.push(Complex64::new(g.sample(), g.sample()));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        StateVector { n_qubits, amps }
    }
}

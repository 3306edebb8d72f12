//! Pauli strings in the symplectic (bit-mask) representation with exact
//! phase tracking.
//!
//! A string is stored as `i^phase_exp * X^x_mask * Z^z_mask`, X factors to
//! the left of Z factors, one bit per qubit. Y is represented as
//! `i * X * Z` on its qubit. Products, adjoints, Hermiticity and squares are
//! all O(1) bit arithmetic on the masks; the phase exponent lives in Z_4 and
//! is never approximated.

use num_complex::Complex64;

use crate::error::{Result, SykError};
use crate::simkernel::dense::DenseOperator;
use crate::simkernel::state::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PauliString {
    n_qubits: u32,
    x_mask: u64,
    z_mask: u64,
    /// Power of i in front of X^x Z^z, reduced mod 4.
    phase_exp: u8,
}

const I_POWERS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

impl PauliString {
    pub fn identity(n_qubits: u32) -> Self {
        assert!((1..=64).contains(&n_qubits));
        PauliString { n_qubits, x_mask: 0, z_mask: 0, phase_exp: 0 }
    }

    pub fn from_masks(n_qubits: u32, x_mask: u64, z_mask: u64, phase_exp: u8) -> Self {
        assert!((1..=64).contains(&n_qubits));
        let reg = if n_qubits == 64 { u64::MAX } else { (1u64 << n_qubits) - 1 };
        assert!((x_mask | z_mask) <= reg, "mask exceeds register");
        PauliString { n_qubits, x_mask, z_mask, phase_exp: phase_exp & 3 }
    }

    pub fn x(n_qubits: u32, q: u32) -> Self {
        Self::from_masks(n_qubits, 1 << q, 0, 0)
    }

    pub fn z(n_qubits: u32, q: u32) -> Self {
        Self::from_masks(n_qubits, 0, 1 << q, 0)
    }

    /// Y = i X Z.
    pub fn y(n_qubits: u32, q: u32) -> Self {
        Self::from_masks(n_qubits, 1 << q, 1 << q, 1)
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x_mask
    }

    pub fn z_mask(&self) -> u64 {
        self.z_mask
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    /// Number of qubits carrying a non-identity factor.
    pub fn weight(&self) -> u32 {
        (self.x_mask | self.z_mask).count_ones()
    }

    /// Exact product self * other. Moving other's X factors through self's
    /// Z factors picks up (-1) per crossing, folded into the phase exponent.
    pub fn mul(&self, other: &PauliString) -> PauliString {
        assert_eq!(self.n_qubits, other.n_qubits, "width mismatch in Pauli product");
        let crossings = (self.z_mask & other.x_mask).count_ones();
        PauliString {
            n_qubits: self.n_qubits,
            x_mask: self.x_mask ^ other.x_mask,
            z_mask: self.z_mask ^ other.z_mask,
            phase_exp: (self.phase_exp as u32 + other.phase_exp as u32 + 2 * crossings) as u8 & 3,
        }
    }

    /// Hermitian conjugate: reverses the XZ ordering per overlapping qubit
    /// and conjugates the phase.
    pub fn adjoint(&self) -> PauliString {
        let overlap = (self.x_mask & self.z_mask).count_ones();
        let phase = (4 - self.phase_exp as u32 + 2 * overlap) & 3;
        PauliString { phase_exp: phase as u8, ..*self }
    }

    /// A Pauli string is either Hermitian or anti-Hermitian; it is Hermitian
    /// exactly when the phase exponent and the XZ-overlap count have equal
    /// parity.
    pub fn is_hermitian(&self) -> bool {
        (self.phase_exp as u32 + (self.x_mask & self.z_mask).count_ones()).is_multiple_of(2)
    }

    /// The Hermitian member of {P, -iP}: anti-Hermitian strings are rotated
    /// by -i, Hermitian ones returned unchanged. Used wherever an encoded
    /// term must be a reflection (Hermitian involution).
    pub fn hermitian_representative(&self) -> PauliString {
        if self.is_hermitian() {
            *self
        } else {
            PauliString { phase_exp: (self.phase_exp + 3) & 3, ..*self }
        }
    }

    /// The square of a Pauli string is (+/-) identity; returns the sign.
    /// +1 exactly for Hermitian strings.
    pub fn square_sign(&self) -> i32 {
        let p = self.phase_exp as u32 + (self.x_mask & self.z_mask).count_ones();
        if p.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Scalar prefactor applied to basis state |k>: P|k> = c(k) |k ^ x_mask>.
    #[inline]
    fn basis_factor(&self, k: usize) -> Complex64 {
        let z_parity = ((k as u64 & self.z_mask).count_ones() & 1) as u8;
        I_POWERS[((self.phase_exp + 2 * z_parity) & 3) as usize]
    }

    /// In-place action on an amplitude block of length 2^n_qubits (or a
    /// sub-block of a larger register whose low qubits this string acts on).
    pub(crate) fn apply_to_amps(&self, amps: &mut [Complex64]) {
        let x = self.x_mask as usize;
        if x == 0 {
            for (k, a) in amps.iter_mut().enumerate() {
                *a *= self.basis_factor(k);
            }
        } else {
            for k in 0..amps.len() {
                let j = k ^ x;
                if j > k {
                    // P maps |k> -> c(k)|j> and |j> -> c(j)|k>.
                    let (ak, aj) = (amps[k], amps[j]);
                    amps[j] = self.basis_factor(k) * ak;
                    amps[k] = self.basis_factor(j) * aj;
                }
            }
        }
    }

    /// Dense matrix with entries M[k ^ x_mask, k] = i^phase (-1)^{z.k}.
    pub fn dense(&self) -> DenseOperator {
        let dim = 1usize << self.n_qubits;
        let mut m = DenseOperator::zeros(dim);
        for k in 0..dim {
            m.set(k ^ self.x_mask as usize, k, self.basis_factor(k));
        }
        m
    }
}

/// Apply a Pauli string to a state of matching width.
pub fn apply_pauli_string(state: &mut StateVector, p: &PauliString) -> Result<()> {
    if state.n_qubits() != p.n_qubits() {
        return Err(SykError::WidthMismatch {
            expected: p.n_qubits(),
            actual: state.n_qubits(),
        });
    }
    p.apply_to_amps(state.amps_mut());
    Ok(())
}

impl std::fmt::Display for PauliString {
    /// Prints a sign prefix and per-qubit letters, highest qubit first,
    /// with XZ pairs shown as Y (the i in Y = iXZ moves into the prefix).
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let y_count = (self.x_mask & self.z_mask).count_ones();
        let shown = ((self.phase_exp as u32 + 3 * y_count) & 3) as usize;
        write!(f, "{}", ["+", "+i", "-", "-i"][shown])?;
        for q in (0..self.n_qubits).rev() {
            let x = self.x_mask >> q & 1 != 0;
            let z = self.z_mask >> q & 1 != 0;
            let c = match (x, z) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent dense oracle: Kronecker product of explicit 2x2 matrices,
    /// qubit n-1 leftmost so that qubit 0 indexes the least significant bit.
    fn kron_oracle(p: &PauliString) -> DenseOperator {
        let id = DenseOperator::identity(2);
        let mk = |rows: [[Complex64; 2]; 2]| {
            let mut m = DenseOperator::zeros(2);
            for r in 0..2 {
                for c in 0..2 {
                    m.set(r, c, rows[r][c]);
                }
            }
            m
        };
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let im = Complex64::new(0.0, 1.0);
        let x = mk([[zero, one], [one, zero]]);
        let z = mk([[one, zero], [zero, -one]]);
        let y = mk([[zero, -im], [im, zero]]);
        let mut acc = DenseOperator::identity(1);
        for q in (0..p.n_qubits()).rev() {
            let xb = p.x_mask() >> q & 1 != 0;
            let zb = p.z_mask() >> q & 1 != 0;
            let factor = match (xb, zb) {
                (false, false) => &id,
                (true, false) => &x,
                (false, true) => &z,
                (true, true) => &y,
            };
            acc = acc.kron(factor);
        }
        // The stored phase counts each Y as iXZ; the oracle built Y matrices
        // directly, so compensate i^phase * (XZ)^k = i^(phase-k) * Y^k.
        let y_count = (p.x_mask() & p.z_mask()).count_ones();
        let shown = ((p.phase_exp() as u32 + 3 * y_count) & 3) as usize;
        acc.scale(super::I_POWERS[shown]);
        acc
    }

    fn random_string(n: u32, rng: &mut crate::rng::SplitMix64) -> PauliString {
        let reg = (1u64 << n) - 1;
        PauliString::from_masks(
            n,
            rng.next_u64() & reg,
            rng.next_u64() & reg,
            (rng.next_u64() & 3) as u8,
        )
    }

    #[test]
    fn single_qubit_letters_match_their_matrices() {
        for (s, m) in [
            (PauliString::x(1, 0), [[0.0, 1.0], [1.0, 0.0]]),
            (PauliString::z(1, 0), [[1.0, 0.0], [0.0, -1.0]]),
        ] {
            let d = s.dense();
            for r in 0..2 {
                for c in 0..2 {
                    assert!((d.get(r, c).re - m[r][c]).abs() < 1e-15);
                    assert!(d.get(r, c).im.abs() < 1e-15);
                }
            }
        }
        let y = PauliString::y(1, 0).dense();
        assert!((y.get(0, 1) - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((y.get(1, 0) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn x0_and_z0_act_as_documented() {
        let mut s = StateVector::zero_state(2);
        apply_pauli_string(&mut s, &PauliString::x(2, 0)).unwrap();
        assert_eq!(s.amp(1), Complex64::new(1.0, 0.0));

        let mut s = StateVector::basis_state(2, 1);
        apply_pauli_string(&mut s, &PauliString::z(2, 0)).unwrap();
        assert_eq!(s.amp(1), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn x2_z1_z0_matches_kronecker_oracle_on_all_basis_states() {
        let p = PauliString::x(3, 2).mul(&PauliString::z(3, 1)).mul(&PauliString::z(3, 0));
        let oracle = kron_oracle(&p);
        for col in 0..8 {
            let mut s = StateVector::basis_state(3, col);
            apply_pauli_string(&mut s, &p).unwrap();
            for row in 0..8 {
                assert!(
                    (s.amp(row) - oracle.get(row, col)).norm() < 1e-15,
                    "entry ({row},{col})"
                );
            }
        }
    }

    #[test]
    fn products_track_phases_exactly_against_dense_oracle() {
        let mut rng = crate::rng::SplitMix64::new(21);
        for _ in 0..40 {
            let a = random_string(4, &mut rng);
            let b = random_string(4, &mut rng);
            let prod = a.mul(&b);
            let dense_prod = kron_oracle(&a).matmul(&kron_oracle(&b));
            assert!(kron_oracle(&prod).max_abs_diff(&dense_prod) < 1e-13);
        }
    }

    #[test]
    fn square_has_empty_masks_and_correct_sign() {
        let mut rng = crate::rng::SplitMix64::new(5);
        for _ in 0..60 {
            let p = random_string(5, &mut rng);
            let sq = p.mul(&p);
            assert_eq!(sq.x_mask(), 0);
            assert_eq!(sq.z_mask(), 0);
            let want = if p.square_sign() == 1 { 0 } else { 2 };
            assert_eq!(sq.phase_exp(), want);
            assert_eq!(p.is_hermitian(), p.square_sign() == 1);
        }
    }

    #[test]
    fn adjoint_matches_conjugate_transpose() {
        let mut rng = crate::rng::SplitMix64::new(17);
        for _ in 0..40 {
            let p = random_string(4, &mut rng);
            assert!(kron_oracle(&p.adjoint()).max_abs_diff(&kron_oracle(&p).dagger()) < 1e-14);
        }
    }

    #[test]
    fn hermitian_representative_is_hermitian_and_proportional() {
        let p = PauliString::x(2, 0).mul(&PauliString::y(2, 0)); // XY = iZ, anti-Hermitian x ... check
        let h = p.hermitian_representative();
        assert!(h.is_hermitian());
        assert_eq!(h.x_mask(), p.x_mask());
        assert_eq!(h.z_mask(), p.z_mask());
        // Rotating by -i means dense(h) = -i * dense(p) when p was not
        // already Hermitian.
        if !p.is_hermitian() {
            let mut scaled = kron_oracle(&p);
            scaled.scale(Complex64::new(0.0, -1.0));
            assert!(kron_oracle(&h).max_abs_diff(&scaled) < 1e-14);
        }
    }

    #[test]
    fn apply_agrees_with_dense_matvec_on_random_states() {
        let mut rng = crate::rng::SplitMix64::new(33);
        for trial in 0..20 {
            let p = random_string(5, &mut rng);
            let mut s = StateVector::random_state(5, 900 + trial);
            let want = kron_oracle(&p).matvec(s.amps());
            apply_pauli_string(&mut s, &p).unwrap();
            for (a, b) in s.amps().iter().zip(&want) {
                assert!((a - b).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn display_shows_y_and_sign() {
        assert_eq!(PauliString::y(2, 0).to_string(), "+IY");
        let zx = PauliString::z(1, 0).mul(&PauliString::x(1, 0)); // ZX = iY... -> displays +iY? ZX = iY
        assert_eq!(zx.to_string(), "+iY");
        assert_eq!(PauliString::identity(3).to_string(), "+III");
    }

    #[test]
    fn width_mismatch_rejected() {
        let mut s = StateVector::zero_state(3);
        let p = PauliString::x(4, 0);
        assert!(apply_pauli_string(&mut s, &p).is_err());
    }
}

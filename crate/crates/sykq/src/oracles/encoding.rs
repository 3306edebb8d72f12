//! The composed self-inverse block encoding
//! U = CPrep† · X_flag · V · CPrep, where CPrep applies A on the flag-0
//! branch and B on the flag-1 branch, and V is the Hermitian-involution
//! term select. In flag blocks the dense matrix is [[0, A†VB], [B†VA, 0]],
//! so U² = CPrep†·V²·CPrep = I and the projected block
//! ⟨G|U|G⟩ = (M + M†)/2 with M = ⟨0|B†VA|0⟩ is Hermitian for any A.
//!
//! The register layout puts the flag on the top qubit, which turns the
//! controlled preparations into plain circuit applications on the two
//! contiguous halves of the amplitude array.

use num_complex::Complex64;

use crate::error::{Result, SykError};
use crate::oracles::prep::{
    amplitude_readback, build_a_random, build_b, default_depth, ExactPrep, PrepApplier, PrepOracle,
};
use crate::oracles::select::{slot_in_domain, TermSelect};
use crate::simkernel::{extract_operator, Circuit, DenseOperator, StateOp, StateVector};
use crate::sykmodel::{
    assemble_encoded_hamiltonian, lambda_estimate, lambda_exact, IndexMode, RegisterLayout,
    SykInstance,
};

/// How the A oracle was constructed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PrepMode {
    /// Householder injection of the exact coupling amplitudes.
    Exact,
    /// Random orthogonal circuit; the instance couplings are then *defined*
    /// by its readback amplitudes.
    Random { depth: u32, seed: u64 },
}

/// A fully assembled asymmetric block encoding of one SYK instance.
#[derive(Debug, Clone)]
pub struct BlockEncoding {
    instance: SykInstance,
    layout: RegisterLayout,
    prep: PrepOracle,
    prep_mode: PrepMode,
    select: TermSelect,
    lambda: f64,
    identity_offset: f64,
}

impl BlockEncoding {
    /// Encode a given instance exactly: α_ℓ = w_ℓ/‖w‖ on the domain slots,
    /// zero on padding, λ = √(L Σw²). A zero-coupling instance encodes the
    /// zero operator (λ = 0, with an arbitrary normalized α).
    pub fn with_exact_prep(instance: SykInstance) -> Result<Self> {
        let layout = instance.layout();
        let l = layout.index_dim();
        let mut weights = vec![0.0f64; l];
        for &(p, q, r, s, w) in &instance.entries {
            weights[layout.slot_of(p as u32, q as u32, r as u32, s as u32)] = w;
        }
        let lambda = lambda_exact(&instance)?;
        let prep = if lambda == 0.0 {
            let mut e0 = vec![0.0; l];
            e0[0] = 1.0;
            ExactPrep::new(&e0)?
        } else {
            ExactPrep::new(&weights)?
        };
        let select = TermSelect::build(layout, instance.mode);
        Ok(BlockEncoding {
            instance,
            layout,
            prep: PrepOracle::Exact(prep),
            prep_mode: PrepMode::Exact,
            select,
            lambda,
            identity_offset: 0.0,
        })
    }

    /// Encode with a random orthogonal A. The couplings are defined by the
    /// circuit: w_ℓ = λ α_ℓ β_ℓ on the domain slots with λ the ensemble
    /// estimate N^{5/2}J√6/96, so the induced coupling variance matches the
    /// SYK target. Amplitude weight on padding slots multiplies the
    /// identity and is tracked as `identity_offset`.
    pub fn with_random_prep(
        n: u32,
        j: f64,
        mode: IndexMode,
        depth: u32,
        seed: u64,
    ) -> Result<Self> {
        let layout = RegisterLayout::for_modes(n)?;
        let circuit = build_a_random(&layout, depth, seed)?;
        let alpha = amplitude_readback(&circuit)?;
        let lambda = lambda_estimate(n, j);
        let beta = 1.0 / (layout.index_dim() as f64).sqrt();

        let mut entries = Vec::new();
        let mut offset = 0.0;
        for (slot, &a) in alpha.iter().enumerate() {
            if slot_in_domain(&layout, slot, mode) {
                let (p, q, r, s) = layout.tuple_of(slot);
                entries.push((p as u8, q as u8, r as u8, s as u8, lambda * a * beta));
            } else {
                offset += lambda * a * beta;
            }
        }
        // Domain iteration above runs in slot order, which for both modes is
        // the lexicographic tuple order the instance format expects.
        let instance = SykInstance::from_entries(n, j, mode, seed, entries)?;
        let select = TermSelect::build(layout, mode);
        Ok(BlockEncoding {
            instance,
            layout,
            prep: PrepOracle::Random(circuit),
            prep_mode: PrepMode::Random { depth, seed },
            select,
            lambda,
            identity_offset: offset,
        })
    }

    /// Random-prep encoding at the default circuit depth for the layout.
    pub fn with_random_prep_default_depth(
        n: u32,
        j: f64,
        mode: IndexMode,
        seed: u64,
    ) -> Result<Self> {
        let layout = RegisterLayout::for_modes(n)?;
        Self::with_random_prep(n, j, mode, default_depth(&layout), seed)
    }

    pub fn instance(&self) -> &SykInstance {
        &self.instance
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn prep(&self) -> &PrepOracle {
        &self.prep
    }

    pub fn prep_mode(&self) -> PrepMode {
        self.prep_mode
    }

    pub fn select(&self) -> &TermSelect {
        &self.select
    }

    /// The rescaling factor λ of this encoding.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Coefficient of the identity carried by padding-slot amplitude weight
    /// (nonzero only for random preparation on a padded domain).
    pub fn identity_offset(&self) -> f64 {
        self.identity_offset
    }

    /// The A-oracle amplitudes α.
    pub fn alpha(&self) -> Result<Vec<f64>> {
        crate::oracles::prep::prep_readback(&self.prep)
    }

    /// The uniform B amplitude 1/√L.
    pub fn beta(&self) -> f64 {
        1.0 / (self.layout.index_dim() as f64).sqrt()
    }

    /// The signal ancilla state |G⟩ = |+⟩_flag ⊗ |0⟩^{index}.
    pub fn g_state(&self) -> StateVector {
        g_state(&self.layout)
    }

    /// Build the applier for U (embeds the preparation circuits once).
    pub fn unitary(&self) -> Result<EncodingUnitary<'_>> {
        let n_system = self.layout.n_system();
        Ok(EncodingUnitary {
            enc: self,
            a: PrepApplier::build(&self.prep, n_system)?,
            b: build_b(self.layout.n_index())
                .shifted(n_system, n_system + self.layout.n_index())?,
        })
    }

    /// λ·⟨G|U|G⟩ as a dense operator on the system register: the effective
    /// Hamiltonian every downstream module simulates.
    pub fn encoded_hamiltonian(&self) -> Result<DenseOperator> {
        let mut h = self.normalized_block()?;
        h.scale(Complex64::new(self.lambda, 0.0));
        Ok(h)
    }

    /// ⟨G|U|G⟩ without the λ factor (all singular values ≤ 1).
    pub fn normalized_block(&self) -> Result<DenseOperator> {
        let u = self.unitary()?;
        let g = self.g_state();
        extract_operator(&u, self.layout.n_system(), &g, &g)
    }

    /// The dense matrix the encoding is expected to produce: the Hermitian
    /// term sum of the instance plus the padding identity offset.
    pub fn target_hamiltonian(&self) -> Result<DenseOperator> {
        let mut h = assemble_encoded_hamiltonian(&self.instance)?;
        if self.identity_offset != 0.0 {
            let id = DenseOperator::identity(h.dim());
            h.add_scaled(&id, Complex64::new(self.identity_offset, 0.0));
        }
        Ok(h)
    }
}

/// |G⟩ = |+⟩_flag ⊗ |0⟩^{index} on the ancilla block (index + flag qubits).
pub fn g_state(layout: &RegisterLayout) -> StateVector {
    let n_anc = layout.n_index() + 1;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << n_anc];
    let r = std::f64::consts::FRAC_1_SQRT_2;
    amps[0] = Complex64::new(r, 0.0);
    amps[1usize << layout.n_index()] = Complex64::new(r, 0.0);
    StateVector::from_amplitudes(n_anc, amps).expect("normalized by construction")
}

/// In-place applier for U = CPrep†·X_flag·V·CPrep on the encoding register
/// (system low, index middle, flag top). The flag-controlled preparations
/// act as plain circuit applications on the two contiguous array halves.
pub struct EncodingUnitary<'e> {
    enc: &'e BlockEncoding,
    a: PrepApplier,
    b: Circuit,
}

impl<'e> EncodingUnitary<'e> {
    fn check(&self, state: &StateVector) -> Result<()> {
        let expected = self.enc.layout.encoding_width();
        if state.n_qubits() != expected {
            return Err(SykError::WidthMismatch { expected, actual: state.n_qubits() });
        }
        Ok(())
    }

    /// CPrep: A on the flag-0 half, B on the flag-1 half.
    fn controlled_prep(&self, lo: &mut [Complex64], hi: &mut [Complex64]) {
        self.a.apply(lo, self.enc.layout.n_system());
        self.b.run_unchecked(hi);
    }

    /// CPrep†. The B circuit (disjoint Hadamards) is self-inverse.
    fn controlled_prep_inverse(&self, lo: &mut [Complex64], hi: &mut [Complex64]) {
        self.a.apply_inverse(lo, self.enc.layout.n_system());
        self.b.run_unchecked(hi);
    }
}

impl<'e> StateOp for EncodingUnitary<'e> {
    fn n_qubits(&self) -> u32 {
        self.enc.layout.encoding_width()
    }

    fn apply(&self, state: &mut StateVector) -> Result<()> {
        self.check(state)?;
        let amps = state.amps_mut();
        let half = amps.len() / 2;
        let (lo, hi) = amps.split_at_mut(half);
        self.controlled_prep(lo, hi);
        self.enc.select.apply_to_slice(lo);
        self.enc.select.apply_to_slice(hi);
        lo.swap_with_slice(hi);
        self.controlled_prep_inverse(lo, hi);
        Ok(())
    }

    fn apply_inverse(&self, state: &mut StateVector) -> Result<()> {
        // Literal reversal (CPrep†·V†·X·CPrep); V is self-adjoint. U is
        // provably self-inverse, but this implementation does not assume it.
        self.check(state)?;
        let amps = state.amps_mut();
        let half = amps.len() / 2;
        let (lo, hi) = amps.split_at_mut(half);
        self.controlled_prep(lo, hi);
        lo.swap_with_slice(hi);
        self.enc.select.apply_to_slice(lo);
        self.enc.select.apply_to_slice(hi);
        self.controlled_prep_inverse(lo, hi);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sykmodel::{assemble_hamiltonian, sample_couplings};

    fn exact_encoding(n: u32, seed: u64) -> BlockEncoding {
        let inst = sample_couplings(n, 1.0, IndexMode::DistinctSorted, seed).unwrap();
        BlockEncoding::with_exact_prep(inst).unwrap()
    }

    #[test]
    fn exact_encoding_reproduces_the_assembled_hamiltonian() {
        let enc = exact_encoding(4, 42);
        let encoded = enc.encoded_hamiltonian().unwrap();
        let assembled = assemble_hamiltonian(enc.instance()).unwrap();
        let err = encoded.max_abs_diff(&assembled);
        assert!(err < 1e-10, "encode error {err}");
    }

    #[test]
    fn zero_couplings_encode_the_zero_operator() {
        let inst = sample_couplings(4, 0.0, IndexMode::DistinctSorted, 3).unwrap();
        let enc = BlockEncoding::with_exact_prep(inst).unwrap();
        assert_eq!(enc.lambda(), 0.0);
        let encoded = enc.encoded_hamiltonian().unwrap();
        assert!(encoded.max_abs() < 1e-15);
    }

    #[test]
    fn unitary_is_self_inverse_on_probes() {
        for (enc, label) in [
            (exact_encoding(4, 7), "exact"),
            (
                BlockEncoding::with_random_prep(4, 1.0, IndexMode::AllTuples, 4, 7).unwrap(),
                "random",
            ),
        ] {
            let u = enc.unitary().unwrap();
            let orig = StateVector::random_state(u.n_qubits(), 100);
            let mut state = orig.clone();
            u.apply(&mut state).unwrap();
            u.apply(&mut state).unwrap();
            assert!(state.max_abs_diff(&orig) < 1e-12, "{label}: U^2 != I");

            let mut state = orig.clone();
            u.apply(&mut state).unwrap();
            u.apply_inverse(&mut state).unwrap();
            assert!(state.max_abs_diff(&orig) < 1e-12, "{label}: U^-1 U != I");
        }
    }

    #[test]
    fn flag_blocks_are_purely_off_diagonal() {
        let enc = exact_encoding(4, 11);
        let u = enc.unitary().unwrap();
        let width = u.n_qubits();
        let half = 1usize << (width - 1);
        // A flag-0 input must come out entirely on the flag-1 half.
        let sub = StateVector::random_state(width - 1, 8);
        let mut amps = vec![Complex64::new(0.0, 0.0); 2 * half];
        amps[..half].copy_from_slice(sub.amps());
        let mut state = StateVector::from_amplitudes(width, amps).unwrap();
        u.apply(&mut state).unwrap();
        let lo_weight: f64 = (0..half).map(|i| state.amp(i).norm_sqr()).sum();
        assert!(lo_weight < 1e-24, "flag-diagonal leakage {lo_weight}");
    }

    #[test]
    fn projected_block_is_hermitian_even_for_all_tuples_random_prep() {
        let enc = BlockEncoding::with_random_prep(4, 1.0, IndexMode::AllTuples, 5, 21).unwrap();
        let block = enc.normalized_block().unwrap();
        assert!(block.hermiticity_defect_max() < 1e-12);
        // Sub-normalization: singular values of ⟨G|U|G⟩ stay ≤ 1.
        let svals = block.singular_values();
        for s in svals {
            assert!(s <= 1.0 + 1e-10, "singular value {s}");
        }
    }

    #[test]
    fn random_prep_encodes_its_readback_couplings() {
        // All-tuples: no padding, offset must vanish, and the encoded
        // operator equals the Hermitian term sum of the derived instance.
        let enc = BlockEncoding::with_random_prep(4, 1.0, IndexMode::AllTuples, 6, 9).unwrap();
        assert_eq!(enc.identity_offset(), 0.0);
        let encoded = enc.encoded_hamiltonian().unwrap();
        let target = enc.target_hamiltonian().unwrap();
        let err = encoded.max_abs_diff(&target);
        assert!(err < 1e-10, "all-tuples readback error {err}");

        // Distinct-sorted: padding weight shows up as an identity offset.
        let enc = BlockEncoding::with_random_prep(4, 1.0, IndexMode::DistinctSorted, 6, 9).unwrap();
        assert!(enc.identity_offset() != 0.0);
        let encoded = enc.encoded_hamiltonian().unwrap();
        let target = enc.target_hamiltonian().unwrap();
        let err = encoded.max_abs_diff(&target);
        assert!(err < 1e-10, "distinct-sorted readback error {err}");
    }

    #[test]
    fn lambda_alpha_beta_recovers_the_weights() {
        let enc = exact_encoding(6, 13);
        let alpha = enc.alpha().unwrap();
        let beta = enc.beta();
        let layout = *enc.layout();
        for &(p, q, r, s, w) in &enc.instance().entries {
            let slot = layout.slot_of(p as u32, q as u32, r as u32, s as u32);
            let recovered = enc.lambda() * alpha[slot] * beta;
            assert!((recovered - w).abs() < 1e-14);
        }
    }

    #[test]
    fn g_state_is_the_product_plus_zero_state() {
        let layout = RegisterLayout::for_modes(4).unwrap();
        let g = g_state(&layout);
        assert_eq!(g.n_qubits(), 9);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((g.amp(0).re - r).abs() < 1e-15);
        assert!((g.amp(1 << 8).re - r).abs() < 1e-15);
        let norm: f64 = g.amps().iter().map(|a| a.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-15);
    }

    #[test]
    fn encoding_is_deterministic_per_seed() {
        let a = BlockEncoding::with_random_prep(4, 1.0, IndexMode::AllTuples, 3, 5).unwrap();
        let b = BlockEncoding::with_random_prep(4, 1.0, IndexMode::AllTuples, 3, 5).unwrap();
        assert_eq!(a.instance(), b.instance());
        let ha = a.encoded_hamiltonian().unwrap();
        let hb = b.encoded_hamiltonian().unwrap();
        assert!(ha.max_abs_diff(&hb) == 0.0);
    }

    #[test]
    fn off_diagonal_block_is_b_dag_v_a() {
        // Compare U's flag-0 → flag-1 block against the directly composed
        // S = B†VA on the flagless register, column by column.
        let enc = exact_encoding(4, 19);
        let u = enc.unitary().unwrap();
        let layout = *enc.layout();
        let ns = layout.n_system();
        let flagless = layout.n_index() + ns;
        let half = 1usize << flagless;
        let b = build_b(layout.n_index()).shifted(ns, flagless).unwrap();
        let applier = PrepApplier::build(enc.prep(), ns).unwrap();

        for col in [0usize, 3, 9] {
            // U on |flag=0⟩|0_idx⟩|e_col⟩.
            let mut amps = vec![Complex64::new(0.0, 0.0); 2 * half];
            amps[col] = Complex64::new(1.0, 0.0);
            let mut state = StateVector::from_amplitudes(layout.encoding_width(), amps).unwrap();
            u.apply(&mut state).unwrap();

            // S = B† V A on the same flagless input.
            let mut s_amps = vec![Complex64::new(0.0, 0.0); half];
            s_amps[col] = Complex64::new(1.0, 0.0);
            applier.apply(&mut s_amps, ns);
            enc.select().apply_to_slice(&mut s_amps);
            b.adjoint().run_unchecked(&mut s_amps);

            for i in 0..half {
                let got = state.amp(half + i);
                assert!((got - s_amps[i]).norm() < 1e-12, "col {col} row {i}");
            }
        }
    }
}

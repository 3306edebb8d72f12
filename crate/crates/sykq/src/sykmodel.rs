//! SYK instances: coupling sampling, Majorana-to-Pauli translation, dense
//! Hamiltonian assembly, rescaling factors, and Hermiticity diagnostics.
//!
//! The Hamiltonian is H = (1/96) Σ J_pqrs γ_p γ_q γ_r γ_s with couplings
//! J_pqrs ~ Normal(0, 6 J²/N³) i.i.d. per tuple; each stored weight is
//! w = J_pqrs/96, the coefficient the block encoding actually carries.
//!
//! Two index domains are supported. `DistinctSorted` keeps the C(N,4)
//! strictly increasing tuples p<q<r<s, whose Majorana products are Hermitian
//! involutions; this is the physics-grade ensemble. `AllTuples` keeps every
//! ordered tuple (N⁴ of them, N a power of two). Tuples with repeated
//! indices reduce to products of 0 or 2 Majorana factors, and the two-factor
//! ones are *anti*-Hermitian, so the naive signed sum over all tuples is not
//! Hermitian; [`hermiticity_defect`] measures that, and the encoding layer
//! documents how its self-inverse construction suppresses it.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SykError};
use crate::rng::GaussianStream;
use crate::simkernel::{DenseOperator, PauliString};

/// Index domain over which coupling tuples run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexMode {
    /// Every ordered tuple (p,q,r,s) ∈ [0,N)⁴; requires N a power of two so
    /// the tuples exactly fill the index register.
    #[serde(rename = "all-tuples")]
    AllTuples,
    /// Strictly increasing tuples p<q<r<s; the remaining index-register
    /// slots are zero-weight padding.
    #[serde(rename = "distinct-sorted")]
    DistinctSorted,
}

impl std::fmt::Display for IndexMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IndexMode::AllTuples => write!(f, "all-tuples"),
            IndexMode::DistinctSorted => write!(f, "distinct-sorted"),
        }
    }
}

/// Qubit bookkeeping for the encoding registers.
///
/// With k = ⌈log₂N⌉, the blocks are: system (N qubits), index (4k qubits in
/// four k-bit sub-registers |p⟩|q⟩|r⟩|s⟩), select ancilla (k qubits for the
/// unary-iteration ladder), and one extra qubit that serves as the
/// preparation flag in the composed encoding and as the enable line in the
/// standalone compiled select. Bit assignment, low to high: system, index
/// (s sub-register lowest, p highest), then per-context extras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    n_modes: u32,
    k: u32,
}

impl RegisterLayout {
    pub fn for_modes(n_modes: u32) -> Result<Self> {
        if n_modes < 2 {
            return Err(SykError::InvalidArgument(format!(
                "need at least 2 Majorana modes, got {n_modes}"
            )));
        }
        let k = (n_modes as f64).log2().ceil() as u32;
        Ok(RegisterLayout { n_modes, k })
    }

    pub fn n_modes(&self) -> u32 {
        self.n_modes
    }

    /// Bits per index sub-register.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n_system(&self) -> u32 {
        self.n_modes
    }

    pub fn n_index(&self) -> u32 {
        4 * self.k
    }

    pub fn n_select_ancilla(&self) -> u32 {
        self.k
    }

    /// Dimension of the index register (the padded domain size L).
    pub fn index_dim(&self) -> usize {
        1usize << self.n_index()
    }

    /// Total qubits across all blocks: 4k + k + N + 1.
    pub fn total_qubits(&self) -> u32 {
        self.n_index() + self.n_select_ancilla() + self.n_system() + 1
    }

    /// Width of the composed-encoding register (flag + index + system); the
    /// select ancillas only exist inside the compiled select circuit.
    pub fn encoding_width(&self) -> u32 {
        self.n_system() + self.n_index() + 1
    }

    /// Width of the standalone compiled-select register
    /// (system + index + ladder + enable).
    pub fn select_width(&self) -> u32 {
        self.total_qubits()
    }

    /// Flag qubit position in the encoding register (the top qubit).
    pub fn flag_qubit(&self) -> u32 {
        self.n_system() + self.n_index()
    }

    /// Index-register slot for a tuple: |p⟩|q⟩|r⟩|s⟩ with s in the lowest
    /// k bits.
    pub fn slot_of(&self, p: u32, q: u32, r: u32, s: u32) -> usize {
        let k = self.k;
        ((((((p as usize) << k) | q as usize) << k) | r as usize) << k) | s as usize
    }

    /// Inverse of [`slot_of`].
    pub fn tuple_of(&self, slot: usize) -> (u32, u32, u32, u32) {
        let mask = (1usize << self.k) - 1;
        let s = slot & mask;
        let r = (slot >> self.k) & mask;
        let q = (slot >> (2 * self.k)) & mask;
        let p = (slot >> (3 * self.k)) & mask;
        (p as u32, q as u32, r as u32, s as u32)
    }
}

/// One sampled SYK instance: the coupling scale, the index domain, the seed
/// that generated it, and the weight per tuple in domain iteration order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SykInstance {
    pub n: u32,
    pub j: f64,
    pub mode: IndexMode,
    pub seed: u64,
    /// Entries (p, q, r, s, w) with w = J_pqrs / 96.
    #[serde(rename = "weights")]
    pub entries: Vec<(u8, u8, u8, u8, f64)>,
}

/// Largest mode count accepted for instance construction. Dense assembly
/// stops earlier (N ≤ 12); this bound keeps tuple indices in u8 range with
/// slack and catches nonsense sizes.
pub const MAX_INSTANCE_MODES: u32 = 16;

/// Largest mode count for dense Hamiltonian assembly (2^12 = 4096-dim).
pub const MAX_DENSE_MODES: u32 = 12;

fn check_mode_size(n: u32, mode: IndexMode) -> Result<()> {
    if n < 4 {
        return Err(SykError::InvalidInstance(format!(
            "four-Majorana terms need N >= 4, got {n}"
        )));
    }
    if n > MAX_INSTANCE_MODES {
        return Err(SykError::InvalidInstance(format!(
            "N = {n} exceeds the supported maximum {MAX_INSTANCE_MODES}"
        )));
    }
    if mode == IndexMode::AllTuples && !n.is_power_of_two() {
        return Err(SykError::InvalidInstance(format!(
            "all-tuples mode needs N a power of two, got {n}"
        )));
    }
    Ok(())
}

/// Sample a fresh instance. Couplings are drawn in deterministic tuple
/// order (lexicographic over the domain) from one Gaussian stream seeded by
/// `seed`, so an instance is pinned bit-for-bit by (N, J, mode, seed).
pub fn sample_couplings(n: u32, j: f64, mode: IndexMode, seed: u64) -> Result<SykInstance> {
    check_mode_size(n, mode)?;
    let sigma = j * (6.0 / (n as f64).powi(3)).sqrt();
    let mut stream = GaussianStream::new(seed);
    let mut entries = Vec::new();
    let mut push = |p: u32, q: u32, r: u32, s: u32, stream: &mut GaussianStream| {
        let coupling = sigma * stream.sample();
        entries.push((p as u8, q as u8, r as u8, s as u8, coupling / 96.0));
    };
    match mode {
        IndexMode::AllTuples => {
            for p in 0..n {
                for q in 0..n {
                    for r in 0..n {
                        for s in 0..n {
                            push(p, q, r, s, &mut stream);
                        }
                    }
                }
            }
        }
        IndexMode::DistinctSorted => {
            for p in 0..n {
                for q in (p + 1)..n {
                    for r in (q + 1)..n {
                        for s in (r + 1)..n {
                            push(p, q, r, s, &mut stream);
                        }
                    }
                }
            }
        }
    }
    Ok(SykInstance { n, j, mode, seed, entries })
}

impl SykInstance {
    pub fn layout(&self) -> RegisterLayout {
        RegisterLayout::for_modes(self.n).expect("instance size already validated")
    }

    /// Construct directly from explicit weights (for tests and readback
    /// instances). Validates the entry count and index ranges for the mode.
    pub fn from_entries(
        n: u32,
        j: f64,
        mode: IndexMode,
        seed: u64,
        entries: Vec<(u8, u8, u8, u8, f64)>,
    ) -> Result<Self> {
        check_mode_size(n, mode)?;
        let expected = match mode {
            IndexMode::AllTuples => (n as usize).pow(4),
            IndexMode::DistinctSorted => {
                let n = n as usize;
                n * (n - 1) * (n - 2) * (n - 3) / 24
            }
        };
        if entries.len() != expected {
            return Err(SykError::InvalidInstance(format!(
                "{mode} mode at N={n} needs {expected} entries, got {}",
                entries.len()
            )));
        }
        for &(p, q, r, s, _) in &entries {
            let max = [p, q, r, s].into_iter().max().unwrap() as u32;
            if max >= n {
                return Err(SykError::InvalidInstance(format!(
                    "tuple ({p},{q},{r},{s}) out of range for N={n}"
                )));
            }
            if mode == IndexMode::DistinctSorted && !(p < q && q < r && r < s) {
                return Err(SykError::InvalidInstance(format!(
                    "tuple ({p},{q},{r},{s}) is not strictly increasing"
                )));
            }
        }
        Ok(SykInstance { n, j, mode, seed, entries })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: SykInstance = serde_json::from_str(text)?;
        Self::from_entries(inst.n, inst.j, inst.mode, inst.seed, inst.entries)
    }
}

/// Jordan-Wigner Majorana mode: γ_ℓ = X_ℓ Z_{ℓ-1} ... Z_0, phase 1.
pub fn majorana_pauli(l: u32, n: u32) -> Result<PauliString> {
    if l >= n {
        return Err(SykError::QubitOutOfRange { index: l, width: n });
    }
    Ok(PauliString::from_masks(n, 1u64 << l, (1u64 << l) - 1, 0))
}

/// Exact four-factor product γ_p γ_q γ_r γ_s with tracked phase. Distinct
/// indices give a Hermitian involution; repeated indices collapse factors
/// pairwise and can leave an anti-Hermitian two-factor remainder.
pub fn term_string(p: u32, q: u32, r: u32, s: u32, n: u32) -> Result<PauliString> {
    Ok(majorana_pauli(p, n)?
        .mul(&majorana_pauli(q, n)?)
        .mul(&majorana_pauli(r, n)?)
        .mul(&majorana_pauli(s, n)?))
}

fn check_dense(n: u32) -> Result<()> {
    if n > MAX_DENSE_MODES {
        return Err(SykError::TooWide(n, MAX_DENSE_MODES));
    }
    Ok(())
}

/// Naive signed sum Σ w dense(γ_pγ_qγ_rγ_s) over the instance domain, with
/// exact phases. Hermitian for distinct-sorted instances; generically not
/// for all-tuples ones.
pub fn assemble_hamiltonian(inst: &SykInstance) -> Result<DenseOperator> {
    check_dense(inst.n)?;
    let dim = 1usize << inst.n;
    let mut h = DenseOperator::zeros(dim);
    for &(p, q, r, s, w) in &inst.entries {
        if w == 0.0 {
            continue;
        }
        let term = term_string(p as u32, q as u32, r as u32, s as u32, inst.n)?;
        h.add_scaled(&term.dense(), num_complex::Complex64::new(w, 0.0));
    }
    Ok(h)
}

/// The Hermitian sum the self-inverse encoding actually realizes:
/// Σ w dense(hermitian_representative(term)). Identical to
/// [`assemble_hamiltonian`] on distinct-sorted instances, where every term
/// is already Hermitian.
pub fn assemble_encoded_hamiltonian(inst: &SykInstance) -> Result<DenseOperator> {
    check_dense(inst.n)?;
    let dim = 1usize << inst.n;
    let mut h = DenseOperator::zeros(dim);
    for &(p, q, r, s, w) in &inst.entries {
        if w == 0.0 {
            continue;
        }
        let term =
            term_string(p as u32, q as u32, r as u32, s as u32, inst.n)?.hermitian_representative();
        h.add_scaled(&term.dense(), num_complex::Complex64::new(w, 0.0));
    }
    Ok(h)
}

/// Spectral norm of the anti-Hermitian part (H - H†)/2 of the naive sum:
/// zero for distinct-sorted instances, generically positive for all-tuples
/// ones.
pub fn hermiticity_defect(inst: &SykInstance) -> Result<f64> {
    let h = assemble_hamiltonian(inst)?;
    let mut anti = h.dagger();
    anti.add_scaled(&h, num_complex::Complex64::new(-1.0, 0.0));
    anti.scale(num_complex::Complex64::new(-0.5, 0.0));
    Ok(anti.spectral_norm())
}

/// Exact rescaling factor λ = sqrt(L Σ w²), with L the index-register
/// dimension 2^{4k} (the domain padded up to the register; for all-tuples
/// instances this equals N⁴).
pub fn lambda_exact(inst: &SykInstance) -> Result<f64> {
    if inst.entries.is_empty() {
        return Err(SykError::InvalidInstance("instance has no weights".into()));
    }
    let l = inst.layout().index_dim() as f64;
    let sum_sq: f64 = inst.entries.iter().map(|e| e.4 * e.4).sum();
    Ok((l * sum_sq).sqrt())
}

/// Ensemble-level estimate λ ≈ N^{5/2} J √6 / 96, from L = N⁴ slots each
/// carrying weight variance 6J²/(96²N³).
pub fn lambda_estimate(n: u32, j: f64) -> f64 {
    (n as f64).powf(2.5) * j * 6f64.sqrt() / 96.0
}

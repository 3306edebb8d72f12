//! The qubitization walk W = R·U, its Chebyshev and spectral identities,
//! and the flagless amplification walk.
//!
//! Powers of W project onto Chebyshev polynomials of the encoded
//! Hamiltonian: ⟨G|Wⁿ|G⟩ = T_n(H_eff/λ). On each eigenvector of H_eff with
//! eigenvalue h, W rotates the 2-plane spanned by |G⟩|h⟩ and W|G⟩|h⟩ with
//! eigenphases ±arccos(h/λ).
//!
//! The amplification walk drops the flag qubit and works with S = B†VA
//! directly. Its step is R₀S†R₀S with R₀ = 2|0⟩⟨0|−I on the index
//! register; then ⟨0|step^m|0⟩ = T_{2m}(h) and ⟨0|S·step^m|0⟩ = T_{2m+1}(h)
//! with h = ⟨0|S|0⟩, plus full-space operator identities involving
//! second-kind polynomials. Note the composition S†R₀S (reflect once,
//! conjugated) is an involution — its powers alternate and cannot generate
//! higher Chebyshev polynomials; the reflection must be applied around
//! *both* S applications, which is exactly what the operator identities
//! below encode. A regression test pins this distinction.

use num_complex::Complex64;

use crate::error::{Result, SykError};
use crate::oracles::prep::PrepApplier;
use crate::oracles::{build_b, BlockEncoding};
use crate::simkernel::{Circuit, DenseOperator, StateOp, StateVector};
use crate::sykmodel::RegisterLayout;

/// Reflection 2|G⟩⟨G| − I on the flag + index registers (identity on the
/// system): Hadamard the flag into the |0…0⟩ frame, flip the sign of every
/// state outside the all-zero ancilla block, and undo the Hadamard.
#[derive(Debug, Clone, Copy)]
pub struct ReflectionR {
    layout: RegisterLayout,
}

impl ReflectionR {
    pub fn new(layout: RegisterLayout) -> Self {
        ReflectionR { layout }
    }

    pub(crate) fn apply_to_amps(&self, amps: &mut [Complex64]) {
        let half = amps.len() / 2;
        let sys_dim = 1usize << self.layout.n_system();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let (lo, hi) = amps.split_at_mut(half);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a, *b);
            *a = (x + y) * r;
            *b = (x - y) * r;
        }
        for a in &mut amps[sys_dim..] {
            *a = -*a;
        }
        let (lo, hi) = amps.split_at_mut(half);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a, *b);
            *a = (x + y) * r;
            *b = (x - y) * r;
        }
    }
}

impl StateOp for ReflectionR {
    fn n_qubits(&self) -> u32 {
        self.layout.encoding_width()
    }

    fn apply(&self, state: &mut StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits() {
            return Err(SykError::WidthMismatch {
                expected: self.n_qubits(),
                actual: state.n_qubits(),
            });
        }
        self.apply_to_amps(state.amps_mut());
        Ok(())
    }

    fn apply_inverse(&self, state: &mut StateVector) -> Result<()> {
        self.apply(state)
    }
}

/// The walk operator W = R·U over one block encoding.
pub struct WalkOperator<'e> {
    enc: &'e BlockEncoding,
    u: crate::oracles::EncodingUnitary<'e>,
    r: ReflectionR,
}

impl<'e> WalkOperator<'e> {
    pub fn new(enc: &'e BlockEncoding) -> Result<Self> {
        Ok(WalkOperator { enc, u: enc.unitary()?, r: ReflectionR::new(*enc.layout()) })
    }

    pub fn encoding(&self) -> &BlockEncoding {
        self.enc
    }

    /// Start state |G⟩ ⊗ |system⟩ on the full walk register.
    pub fn g_times_system(&self, sys: &[Complex64]) -> StateVector {
        let layout = self.enc.layout();
        let sys_dim = 1usize << layout.n_system();
        assert_eq!(sys.len(), sys_dim, "system block size mismatch");
        let dim = 1usize << layout.encoding_width();
        let half = dim / 2;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        for (j, &a) in sys.iter().enumerate() {
            amps[j] = a * r;
            amps[half + j] = a * r;
        }
        StateVector::from_amplitudes(layout.encoding_width(), amps)
            .expect("norm preserved by construction")
    }

    /// Project a walk-register state back through ⟨G|: returns the system
    /// block ⟨G|ψ⟩ (unnormalized).
    pub fn project_g(&self, state: &StateVector) -> Vec<Complex64> {
        let layout = self.enc.layout();
        let sys_dim = 1usize << layout.n_system();
        let half = state.dim() / 2;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        (0..sys_dim).map(|j| (state.amp(j) + state.amp(half + j)) * r).collect()
    }

    /// ⟨G|Wⁿ|G⟩ for n = 0..=n_max in one sweep per system column.
    pub fn chebyshev_projections(&self, n_max: usize) -> Result<Vec<DenseOperator>> {
        let sys_dim = 1usize << self.enc.layout().n_system();
        let mut mats: Vec<DenseOperator> =
            (0..=n_max).map(|_| DenseOperator::zeros(sys_dim)).collect();
        let mut column = vec![Complex64::new(0.0, 0.0); sys_dim];
        for j in 0..sys_dim {
            column.iter_mut().for_each(|a| *a = Complex64::new(0.0, 0.0));
            column[j] = Complex64::new(1.0, 0.0);
            let mut state = self.g_times_system(&column);
            for (row, &v) in self.project_g(&state).iter().enumerate() {
                mats[0].set(row, j, v);
            }
            for n in 1..=n_max {
                self.apply(&mut state)?;
                for (row, &v) in self.project_g(&state).iter().enumerate() {
                    mats[n].set(row, j, v);
                }
            }
        }
        Ok(mats)
    }

    /// ⟨G|Wⁿ|G⟩ for a single power.
    pub fn chebyshev_projection(&self, n: usize) -> Result<DenseOperator> {
        Ok(self.chebyshev_projections(n)?.pop().expect("nonempty by construction"))
    }
}

impl<'e> StateOp for WalkOperator<'e> {
    fn n_qubits(&self) -> u32 {
        self.enc.layout().encoding_width()
    }

    fn apply(&self, state: &mut StateVector) -> Result<()> {
        self.u.apply(state)?;
        self.r.apply(state)
    }

    fn apply_inverse(&self, state: &mut StateVector) -> Result<()> {
        self.r.apply_inverse(state)?;
        self.u.apply_inverse(state)
    }
}

/// First-kind Chebyshev matrices T_0..T_{n_max} of a Hermitian matrix by
/// the three-term recurrence (the reference oracle for projection checks).
pub fn chebyshev_t_matrices(h: &DenseOperator, n_max: usize) -> Vec<DenseOperator> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(DenseOperator::identity(h.dim()));
    if n_max == 0 {
        return out;
    }
    out.push(h.clone());
    for n in 2..=n_max {
        let mut next = h.matmul(&out[n - 1]);
        next.scale(Complex64::new(2.0, 0.0));
        next.add_scaled(&out[n - 2], Complex64::new(-1.0, 0.0));
        out.push(next);
    }
    out
}

/// Second-kind Chebyshev matrices U_0..U_{n_max} (U_{-1} = 0 is the
/// caller's convention for the index below zero).
pub fn chebyshev_u_matrices(h: &DenseOperator, n_max: usize) -> Vec<DenseOperator> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(DenseOperator::identity(h.dim()));
    if n_max == 0 {
        return out;
    }
    let mut u1 = h.clone();
    u1.scale(Complex64::new(2.0, 0.0));
    out.push(u1);
    for n in 2..=n_max {
        let mut next = h.matmul(&out[n - 1]);
        next.scale(Complex64::new(2.0, 0.0));
        next.add_scaled(&out[n - 2], Complex64::new(-1.0, 0.0));
        out.push(next);
    }
    out
}

/// Outcome of the eigenphase verification.
#[derive(Debug, Clone)]
pub struct EigenphaseReport {
    /// Max over eigenpairs of ‖W²v − 2(h/λ)Wv + v‖ (2-plane invariance).
    pub max_invariance_residual: f64,
    /// Max over eigenpairs and phase signs of ||phase| − arccos(h/λ)|.
    pub max_phase_error: f64,
    /// True when each restricted 2×2 block yields a conjugate ± pair.
    pub paired: bool,
    /// Per-eigenvalue rows (h/λ, expected arccos, measured |phase|).
    pub rows: Vec<(f64, f64, f64)>,
}

/// Verify that on each eigenvector of the encoded Hamiltonian the walk has
/// eigenphases ±arccos(h/λ): check the characteristic identity
/// W² − 2(h/λ)W + I = 0 on |G⟩|h⟩ and diagonalize the restriction of W to
/// the 2-plane it spans.
pub fn walk_eigenphase_check(w: &WalkOperator<'_>) -> Result<EigenphaseReport> {
    let enc = w.encoding();
    if enc.lambda() == 0.0 {
        return Err(SykError::InvalidArgument(
            "eigenphase check needs lambda > 0 (zero encoding has no spectral content)".into(),
        ));
    }
    let block = enc.normalized_block()?;
    let (vals, vecs) = block.eigh()?;
    let sys_dim = block.dim();

    let mut max_residual = 0.0f64;
    let mut max_phase_error = 0.0f64;
    let mut paired = true;
    let mut rows = Vec::with_capacity(vals.len());

    for (idx, &x) in vals.iter().enumerate() {
        if x.abs() > 1.0 + 1e-10 {
            return Err(SykError::InvalidInstance(format!(
                "eigenvalue {x} of the normalized block exceeds 1: broken encoding"
            )));
        }
        let psi: Vec<Complex64> = (0..sys_dim).map(|r| vecs.get(r, idx)).collect();
        let v1 = w.g_times_system(&psi);
        let mut w1 = v1.clone();
        w.apply(&mut w1)?;
        let mut w2 = w1.clone();
        w.apply(&mut w2)?;

        // Characteristic identity residual.
        let mut residual_sq = 0.0f64;
        for i in 0..v1.dim() {
            let d = w2.amp(i) - 2.0 * x * w1.amp(i) + v1.amp(i);
            residual_sq += d.norm_sqr();
        }
        max_residual = max_residual.max(residual_sq.sqrt());

        let theta = x.clamp(-1.0, 1.0).acos();
        let c = v1.inner(&w1)?;
        // Component of Wv orthogonal to v.
        let mut r_sq = 0.0f64;
        for i in 0..v1.dim() {
            r_sq += (w1.amp(i) - c * v1.amp(i)).norm_sqr();
        }
        let r = r_sq.sqrt();

        if r < 1e-9 {
            // Degenerate 1-plane: W|G⟩|h⟩ = ±|G⟩|h⟩ (only possible at
            // h/λ = ±1, which strict sub-normalization keeps out of reach
            // for sampled instances; handled for completeness).
            let phase = c.arg().abs();
            max_phase_error = max_phase_error.max((phase - theta).abs());
            rows.push((x, theta, phase));
            continue;
        }

        // Restriction of W to span{v1, e2}, e2 = (Wv − c v)/r.
        // We2 = (W²v − c·Wv)/r reuses the vectors above.
        let mut m12 = Complex64::new(0.0, 0.0);
        let mut m22 = Complex64::new(0.0, 0.0);
        for i in 0..v1.dim() {
            let e2 = (w1.amp(i) - c * v1.amp(i)) / r;
            let we2 = (w2.amp(i) - c * w1.amp(i)) / r;
            m12 += v1.amp(i).conj() * we2;
            m22 += e2.conj() * we2;
        }
        let m11 = c;
        let m21 = Complex64::new(r, 0.0);

        // Eigenvalues of the 2×2 restriction.
        let tr = m11 + m22;
        let det = m11 * m22 - m12 * m21;
        let disc = (tr * tr - 4.0 * det).sqrt();
        let mu1 = (tr + disc) / 2.0;
        let mu2 = (tr - disc) / 2.0;

        let (p1, p2) = (mu1.arg(), mu2.arg());
        paired &= (p1 + p2).abs() < 1e-8 && (mu1.norm() - 1.0).abs() < 1e-8;
        let err = (p1.abs() - theta).abs().max((p2.abs() - theta).abs());
        max_phase_error = max_phase_error.max(err);
        rows.push((x, theta, p1.abs()));
    }

    Ok(EigenphaseReport { max_invariance_residual: max_residual, max_phase_error, paired, rows })
}

/// Flagless amplification walk built from S = B†VA on index ⊗ system.
pub struct OaaWalk<'e> {
    enc: &'e BlockEncoding,
    a: PrepApplier,
    b: Circuit,
}

impl<'e> OaaWalk<'e> {
    pub fn new(enc: &'e BlockEncoding) -> Result<Self> {
        let layout = enc.layout();
        let ns = layout.n_system();
        Ok(OaaWalk {
            enc,
            a: PrepApplier::build(enc.prep(), ns)?,
            b: build_b(layout.n_index()).shifted(ns, ns + layout.n_index())?,
        })
    }

    pub fn n_qubits(&self) -> u32 {
        let layout = self.enc.layout();
        layout.n_system() + layout.n_index()
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits()
    }

    fn sys_dim(&self) -> usize {
        1usize << self.enc.layout().n_system()
    }

    /// S = B† V A.
    pub fn apply_s(&self, amps: &mut [Complex64]) {
        let ns = self.enc.layout().n_system();
        self.a.apply(amps, ns);
        self.enc.select().apply_to_slice(amps);
        self.b.run_unchecked(amps); // Hadamard layer: self-adjoint
    }

    /// S† = A† V B.
    pub fn apply_s_inverse(&self, amps: &mut [Complex64]) {
        let ns = self.enc.layout().n_system();
        self.b.run_unchecked(amps);
        self.enc.select().apply_to_slice(amps);
        self.a.apply_inverse(amps, ns);
    }

    /// R₀ = 2|0⟩⟨0| − I on the index register.
    pub fn apply_r0(&self, amps: &mut [Complex64]) {
        for a in &mut amps[self.sys_dim()..] {
            *a = -*a;
        }
    }

    /// One amplification step R₀·S†·R₀·S.
    pub fn apply_step(&self, amps: &mut [Complex64]) {
        self.apply_s(amps);
        self.apply_r0(amps);
        self.apply_s_inverse(amps);
        self.apply_r0(amps);
    }

    /// |0⟩_index ⊗ |sys⟩ embedded in the flagless register.
    pub fn zero_times_system(&self, sys: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(sys.len(), self.sys_dim());
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim()];
        amps[..sys.len()].copy_from_slice(sys);
        amps
    }

    /// ⟨0|S|0⟩ extracted column-wise: the projected block h all identities
    /// reference (equals ⟨G|U|G⟩ of the same encoding).
    pub fn projected_block(&self) -> Result<DenseOperator> {
        let sys_dim = self.sys_dim();
        let mut h = DenseOperator::zeros(sys_dim);
        for j in 0..sys_dim {
            let mut col = vec![Complex64::new(0.0, 0.0); sys_dim];
            col[j] = Complex64::new(1.0, 0.0);
            let mut amps = self.zero_times_system(&col);
            self.apply_s(&mut amps);
            for r in 0..sys_dim {
                h.set(r, j, amps[r]);
            }
        }
        Ok(h)
    }
}

/// Per-power errors from the amplification-walk verification.
#[derive(Debug, Clone)]
pub struct OaaReport {
    /// (m, even projected, odd projected, even operator, odd operator),
    /// operator errors in Frobenius norm (an upper bound on spectral norm).
    pub per_m: Vec<(usize, f64, f64, f64, f64)>,
    pub max_even_projected: f64,
    pub max_odd_projected: f64,
    pub max_even_operator: f64,
    pub max_odd_operator: f64,
}

/// Verify the amplification identities for m = 0..=m_max with
/// h = ⟨0|S|0⟩, step = R₀S†R₀S, and P the |0⟩-index injection:
///
/// * projected even: ⟨0|step^m|0⟩ = T_{2m}(h)
/// * projected odd: ⟨0|S·step^m|0⟩ = T_{2m+1}(h)
/// * operator even: step^m·P = (H − S†)·P·U_{2m−1}(h) + P·T_{2m}(h)
/// * operator odd: S·step^m·P = (S − H)·P·U_{2m}(h) + P·T_{2m+1}(h)
///
/// where H = P h P is the projected block as a full-space operator and
/// U_{-1} = 0. All four are checked column-wise over P's image, which
/// spans every vector the identities constrain.
pub fn verify_oaa_identities(oaa: &OaaWalk<'_>, m_max: usize) -> Result<OaaReport> {
    let sys_dim = 1usize << oaa.enc.layout().n_system();
    let h = oaa.projected_block()?;
    let t_mats = chebyshev_t_matrices(&h, 2 * m_max + 1);
    let u_mats = chebyshev_u_matrices(&h, 2 * m_max);

    // Accumulated squared Frobenius/column errors per m.
    let mut even_proj = vec![0.0f64; m_max + 1];
    let mut odd_proj = vec![0.0f64; m_max + 1];
    let mut even_op = vec![0.0f64; m_max + 1];
    let mut odd_op = vec![0.0f64; m_max + 1];

    for j in 0..sys_dim {
        let mut col = vec![Complex64::new(0.0, 0.0); sys_dim];
        col[j] = Complex64::new(1.0, 0.0);
        let mut state = oaa.zero_times_system(&col);
        for m in 0..=m_max {
            // Projected even.
            let t2m_col: Vec<Complex64> = (0..sys_dim).map(|r| t_mats[2 * m].get(r, j)).collect();
            even_proj[m] += state[..sys_dim]
                .iter()
                .zip(&t2m_col)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>();

            // Operator even: step^m P e_j vs (H − S†) P U_{2m−1} e_j + P T_{2m} e_j.
            let mut rhs = vec![Complex64::new(0.0, 0.0); oaa.dim()];
            if m > 0 {
                let u_col: Vec<Complex64> =
                    (0..sys_dim).map(|r| u_mats[2 * m - 1].get(r, j)).collect();
                // H P u = P (h u); S† P u computed by applying S†.
                let hu = h.matvec(&u_col);
                let mut s_dag_u = oaa.zero_times_system(&u_col);
                oaa.apply_s_inverse(&mut s_dag_u);
                for i in 0..oaa.dim() {
                    rhs[i] = -s_dag_u[i];
                }
                for r in 0..sys_dim {
                    rhs[r] += hu[r];
                }
            }
            for r in 0..sys_dim {
                rhs[r] += t2m_col[r];
            }
            even_op[m] += state.iter().zip(&rhs).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>();

            // Odd: apply S to a copy of the current power.
            let mut s_state = state.clone();
            oaa.apply_s(&mut s_state);
            let t_odd_col: Vec<Complex64> =
                (0..sys_dim).map(|r| t_mats[2 * m + 1].get(r, j)).collect();
            odd_proj[m] += s_state[..sys_dim]
                .iter()
                .zip(&t_odd_col)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>();

            // Operator odd: (S − H) P U_{2m} e_j + P T_{2m+1} e_j.
            let u_col: Vec<Complex64> = (0..sys_dim).map(|r| u_mats[2 * m].get(r, j)).collect();
            let hu = h.matvec(&u_col);
            let mut s_u = oaa.zero_times_system(&u_col);
            oaa.apply_s(&mut s_u);
            let mut rhs = s_u;
            for r in 0..sys_dim {
                rhs[r] -= hu[r];
                rhs[r] += t_odd_col[r];
            }
            odd_op[m] += s_state.iter().zip(&rhs).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>();

            if m < m_max {
                oaa.apply_step(&mut state);
            }
        }
    }

    let finish = |v: Vec<f64>| -> Vec<f64> { v.into_iter().map(f64::sqrt).collect() };
    let (even_proj, odd_proj) = (finish(even_proj), finish(odd_proj));
    let (even_op, odd_op) = (finish(even_op), finish(odd_op));

    let per_m: Vec<(usize, f64, f64, f64, f64)> = (0..=m_max)
        .map(|m| (m, even_proj[m], odd_proj[m], even_op[m], odd_op[m]))
        .collect();
    let fold_max = |v: &[f64]| v.iter().copied().fold(0.0f64, f64::max);
    Ok(OaaReport {
        max_even_projected: fold_max(&even_proj),
        max_odd_projected: fold_max(&odd_proj),
        max_even_operator: fold_max(&even_op),
        max_odd_operator: fold_max(&odd_op),
        per_m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sykmodel::{sample_couplings, IndexMode};

    fn exact_encoding(n: u32, seed: u64) -> BlockEncoding {
        let inst = sample_couplings(n, 1.0, IndexMode::DistinctSorted, seed).unwrap();
        BlockEncoding::with_exact_prep(inst).unwrap()
    }

    #[test]
    fn reflection_fixes_g_and_negates_its_complement() {
        let enc = exact_encoding(4, 2);
        let w = WalkOperator::new(&enc).unwrap();
        let r = ReflectionR::new(*enc.layout());

        // R (|G⟩⊗ψ) = |G⟩⊗ψ.
        let sys = StateVector::random_state(4, 5);
        let mut state = w.g_times_system(sys.amps());
        let orig = state.clone();
        r.apply(&mut state).unwrap();
        assert!(state.max_abs_diff(&orig) < 1e-13);

        // A state with nonzero index register is orthogonal to |G⟩ in the
        // ancilla factor and must come back negated.
        let width = enc.layout().encoding_width();
        let idx_one = 1usize << enc.layout().n_system();
        let mut state = StateVector::basis_state(width, idx_one + 3);
        r.apply(&mut state).unwrap();
        assert!((state.amp(idx_one + 3) + Complex64::new(1.0, 0.0)).norm() < 1e-13);

        // Involution on a random state.
        let orig = StateVector::random_state(width, 71);
        let mut state = orig.clone();
        r.apply(&mut state).unwrap();
        r.apply(&mut state).unwrap();
        assert!(state.max_abs_diff(&orig) < 1e-13);
    }

    #[test]
    fn reflection_matches_its_rank_one_formula_on_basis_states() {
        // R e_t = 2⟨G|t_anc⟩·|G⟩⊗e_sys − e_t, with ⟨G|t_anc⟩ = 1/√2 when
        // the index block is zero and 0 otherwise.
        let enc = exact_encoding(4, 2);
        let layout = *enc.layout();
        let r = ReflectionR::new(layout);
        let w = WalkOperator::new(&enc).unwrap();
        let width = layout.encoding_width();
        let half = 1usize << (width - 1);
        let sys_dim = 1usize << layout.n_system();
        for &t in &[0usize, 3, sys_dim + 1, half, half + 2, half + 5 * sys_dim] {
            let mut state = StateVector::basis_state(width, t);
            r.apply(&mut state).unwrap();
            let idx_zero = (t % half) < sys_dim;
            let mut want = vec![Complex64::new(0.0, 0.0); 1 << width];
            want[t] -= 1.0;
            if idx_zero {
                let mut sys = vec![Complex64::new(0.0, 0.0); sys_dim];
                sys[t % sys_dim] = Complex64::new(1.0, 0.0);
                let g_psi = w.g_times_system(&sys);
                let scale = 2.0 * std::f64::consts::FRAC_1_SQRT_2;
                for i in 0..want.len() {
                    want[i] += scale * g_psi.amp(i);
                }
            }
            for i in 0..want.len() {
                assert!((state.amp(i) - want[i]).norm() < 1e-13, "t={t} i={i}");
            }
        }
    }

    #[test]
    fn low_order_projections_match_the_encoded_block() {
        let enc = exact_encoding(4, 9);
        let w = WalkOperator::new(&enc).unwrap();
        let mats = w.chebyshev_projections(2).unwrap();
        let h = enc.normalized_block().unwrap();

        assert!(mats[0].max_abs_diff(&DenseOperator::identity(16)) < 1e-12, "T0");
        assert!(mats[1].max_abs_diff(&h) < 1e-10, "T1");
        let mut t2 = h.matmul(&h);
        t2.scale(Complex64::new(2.0, 0.0));
        t2.add_scaled(&DenseOperator::identity(16), Complex64::new(-1.0, 0.0));
        assert!(mats[2].max_abs_diff(&t2) < 1e-9, "T2");
    }

    #[test]
    fn projections_follow_the_chebyshev_recursion_for_random_prep() {
        let enc = BlockEncoding::with_random_prep(4, 1.0, IndexMode::AllTuples, 3, 4).unwrap();
        let w = WalkOperator::new(&enc).unwrap();
        let n_max = 8;
        let mats = w.chebyshev_projections(n_max).unwrap();
        let h = enc.normalized_block().unwrap();
        let refs = chebyshev_t_matrices(&h, n_max);
        for n in 0..=n_max {
            let err = mats[n].max_abs_diff(&refs[n]);
            assert!(err < 1e-9, "n={n} err={err}");
        }
    }

    #[test]
    fn eigenphases_match_arccos_of_the_spectrum() {
        let enc = exact_encoding(4, 31);
        let w = WalkOperator::new(&enc).unwrap();
        let report = walk_eigenphase_check(&w).unwrap();
        assert!(report.max_invariance_residual < 1e-10, "{}", report.max_invariance_residual);
        assert!(report.max_phase_error < 1e-9, "{}", report.max_phase_error);
        assert!(report.paired);
        assert_eq!(report.rows.len(), 16);
    }

    #[test]
    fn zero_lambda_walk_is_rejected_for_spectral_checks() {
        let inst = sample_couplings(4, 0.0, IndexMode::DistinctSorted, 3).unwrap();
        let enc = BlockEncoding::with_exact_prep(inst).unwrap();
        let w = WalkOperator::new(&enc).unwrap();
        assert!(walk_eigenphase_check(&w).is_err());
    }

    #[test]
    fn oaa_projected_block_equals_the_flagged_block() {
        let enc = exact_encoding(4, 8);
        let oaa = OaaWalk::new(&enc).unwrap();
        let via_s = oaa.projected_block().unwrap();
        let via_u = enc.normalized_block().unwrap();
        assert!(via_s.max_abs_diff(&via_u) < 1e-12);
    }

    #[test]
    fn oaa_identities_hold_at_low_order() {
        let enc = exact_encoding(4, 12);
        let oaa = OaaWalk::new(&enc).unwrap();
        let report = verify_oaa_identities(&oaa, 3).unwrap();
        assert!(report.max_even_projected < 1e-10, "even {}", report.max_even_projected);
        assert!(report.max_odd_projected < 1e-10, "odd {}", report.max_odd_projected);
        assert!(report.max_even_operator < 1e-10, "even op {}", report.max_even_operator);
        assert!(report.max_odd_operator < 1e-10, "odd op {}", report.max_odd_operator);
    }

    #[test]
    fn single_reflection_form_is_an_involution() {
        // S†R₀S squares to the identity, which is why the step must wrap
        // the reflection around both S applications to generate T_{2m}.
        let enc = exact_encoding(4, 12);
        let oaa = OaaWalk::new(&enc).unwrap();
        let orig = StateVector::random_state(oaa.n_qubits(), 33);
        let mut amps = orig.amps().to_vec();
        for _ in 0..2 {
            oaa.apply_s(&mut amps);
            oaa.apply_r0(&mut amps);
            oaa.apply_s_inverse(&mut amps);
        }
        let diff: f64 = amps
            .iter()
            .zip(orig.amps())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-12, "conjugated reflection must square to identity, diff {diff}");
    }

    #[test]
    fn walk_apply_inverse_reverses_apply() {
        let enc = exact_encoding(4, 44);
        let w = WalkOperator::new(&enc).unwrap();
        let orig = StateVector::random_state(w.n_qubits(), 3);
        let mut state = orig.clone();
        w.apply(&mut state).unwrap();
        w.apply_inverse(&mut state).unwrap();
        assert!(state.max_abs_diff(&orig) < 1e-12);
    }
}

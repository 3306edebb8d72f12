//! State-preparation oracles for the index register.
//!
//! B is always the uniform preparation (Hadamard on every index qubit), so
//! β_ℓ = 1/√L exactly. A comes in two flavors: an exact injection that maps
//! |0⟩ to a prescribed real unit vector α through a Householder reflection,
//! and a random orthogonal circuit (brick-work Givens layers plus per-qubit
//! Ry rotations) whose output amplitudes approach Normal(0, 1/L) statistics
//! with depth. Both keep every amplitude real, which the encoding layer
//! relies on: real α and β make the projected block manifestly Hermitian.

use num_complex::Complex64;

use crate::error::{Result, SykError};
use crate::rng::SplitMix64;
use crate::simkernel::{Circuit, Gate, StateVector};
use crate::sykmodel::RegisterLayout;

/// Hadamard on each of `n_qubits` wires: the uniform preparation B.
pub fn build_b(n_qubits: u32) -> Circuit {
    let mut c = Circuit::new(n_qubits, "prep-B");
    for q in 0..n_qubits {
        c.push(Gate::h(q)).expect("in-range by construction");
    }
    c
}

/// Default random-circuit depth for a layout: the square of the index
/// register width, deep enough in practice for Gaussian amplitude
/// statistics at the sizes this crate simulates.
pub fn default_depth(layout: &RegisterLayout) -> u32 {
    layout.n_index() * layout.n_index()
}

/// Random orthogonal preparation circuit on the index register: `depth`
/// layers, each an alternating brick of nearest-neighbor Givens rotations
/// followed by an Ry on every qubit, all angles i.i.d. uniform in [0, 2π)
/// from the seeded generator. Real matrix entries throughout.
pub fn build_a_random(layout: &RegisterLayout, depth: u32, seed: u64) -> Result<Circuit> {
    if depth == 0 {
        return Err(SykError::InvalidArgument(
            "random preparation needs depth >= 1 (depth 0 would be the identity)".into(),
        ));
    }
    let n = layout.n_index();
    let mut rng = SplitMix64::new(seed);
    let mut c = Circuit::new(n, format!("prep-A-random-d{depth}-s{seed}"));
    for layer in 0..depth {
        let start = layer % 2;
        let mut a = start;
        while a + 1 < n {
            c.push(Gate::givens(a, a + 1, rng.next_angle()))?;
            a += 2;
        }
        for q in 0..n {
            c.push(Gate::ry(q, rng.next_angle()))?;
        }
    }
    Ok(c)
}

/// Exact-injection data: a real unit vector α and the Householder reflector
/// Q = I − 2vv^T/(v·v), v = α − e₀, which satisfies Q|0⟩ = α and Q² = I
/// (so the oracle is its own adjoint).
#[derive(Debug, Clone)]
pub struct ExactPrep {
    alpha: Vec<f64>,
    v: Vec<f64>,
    v_norm_sq: f64,
}

/// Threshold below which v is treated as zero and Q as the identity
/// (α = e₀ exactly or numerically).
const DEGENERATE_V: f64 = 1e-28;

impl ExactPrep {
    /// Normalizes `weights` into α. Errors on the zero vector.
    pub fn new(weights: &[f64]) -> Result<Self> {
        let norm_sq: f64 = weights.iter().map(|w| w * w).sum();
        if norm_sq == 0.0 || !norm_sq.is_finite() {
            return Err(SykError::InvalidArgument(
                "exact preparation needs a nonzero finite weight vector".into(),
            ));
        }
        if !weights.len().is_power_of_two() {
            return Err(SykError::InvalidArgument(format!(
                "weight vector length {} is not a register dimension",
                weights.len()
            )));
        }
        let norm = norm_sq.sqrt();
        let alpha: Vec<f64> = weights.iter().map(|w| w / norm).collect();
        let mut v = alpha.clone();
        v[0] -= 1.0;
        let v_norm_sq: f64 = v.iter().map(|x| x * x).sum();
        Ok(ExactPrep { alpha, v, v_norm_sq })
    }

    /// The prepared amplitudes α (unit 2-norm).
    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn index_dim(&self) -> usize {
        self.alpha.len()
    }

    /// Apply Q to the index register of a register slice whose low
    /// `n_system` qubits are the system. The slice covers index ⊗ system,
    /// so index value ℓ owns the contiguous block [ℓ·2^n, (ℓ+1)·2^n).
    /// Self-adjoint, so this is also the inverse.
    pub(crate) fn apply_to_slice(&self, amps: &mut [Complex64], n_system: u32) {
        if self.v_norm_sq < DEGENERATE_V {
            return;
        }
        let sys_dim = 1usize << n_system;
        debug_assert_eq!(amps.len(), self.alpha.len() * sys_dim);
        // d[s] = Σ_ℓ v_ℓ · amps[ℓ·sys_dim + s], then subtract 2 d v / (v·v).
        let mut d = vec![Complex64::new(0.0, 0.0); sys_dim];
        for (l, &vl) in self.v.iter().enumerate() {
            if vl == 0.0 {
                continue;
            }
            let block = &amps[l * sys_dim..(l + 1) * sys_dim];
            for (acc, &a) in d.iter_mut().zip(block) {
                *acc += vl * a;
            }
        }
        let scale = 2.0 / self.v_norm_sq;
        for (l, &vl) in self.v.iter().enumerate() {
            if vl == 0.0 {
                continue;
            }
            let coeff = scale * vl;
            let block = &mut amps[l * sys_dim..(l + 1) * sys_dim];
            for (a, &acc) in block.iter_mut().zip(&d) {
                *a -= coeff * acc;
            }
        }
    }
}

/// A-preparation oracle: exact injection or a random orthogonal circuit.
#[derive(Debug, Clone)]
pub enum PrepOracle {
    Exact(ExactPrep),
    Random(Circuit),
}

impl PrepOracle {
    pub fn index_qubits(&self) -> u32 {
        match self {
            PrepOracle::Exact(e) => e.index_dim().trailing_zeros(),
            PrepOracle::Random(c) => c.n_qubits(),
        }
    }
}

/// Simulate a preparation circuit on |0…0⟩ and return its real amplitude
/// list. Errors if any amplitude has imaginary weight beyond 1e-12 (a
/// non-orthogonal circuit slipped in).
pub fn amplitude_readback(circuit: &Circuit) -> Result<Vec<f64>> {
    let mut state = StateVector::zero_state(circuit.n_qubits());
    circuit.run(&mut state)?;
    let mut out = Vec::with_capacity(state.dim());
    for a in state.amps() {
        if a.im.abs() > 1e-12 {
            return Err(SykError::ComplexAmplitude { imag: a.im });
        }
        out.push(a.re);
    }
    Ok(out)
}

/// Readback for either oracle flavor.
pub fn prep_readback(prep: &PrepOracle) -> Result<Vec<f64>> {
    match prep {
        PrepOracle::Exact(e) => Ok(e.alpha().to_vec()),
        PrepOracle::Random(c) => amplitude_readback(c),
    }
}

/// Slice-level applier used by the composed encoding and the amplification
/// walk: wraps either oracle with forward/adjoint application on a register
/// whose low `n_system` qubits are the system and whose next qubits are the
/// index register.
#[derive(Debug, Clone)]
pub(crate) enum PrepApplier {
    Exact(ExactPrep),
    Random { forward: Circuit, adjoint: Circuit },
}

impl PrepApplier {
    /// Build from an oracle for slices of width `n_system + n_index`.
    pub(crate) fn build(prep: &PrepOracle, n_system: u32) -> Result<PrepApplier> {
        Ok(match prep {
            PrepOracle::Exact(e) => PrepApplier::Exact(e.clone()),
            PrepOracle::Random(c) => {
                let width = n_system + c.n_qubits();
                let forward = c.shifted(n_system, width)?;
                let adjoint = forward.adjoint();
                PrepApplier::Random { forward, adjoint }
            }
        })
    }

    pub(crate) fn apply(&self, amps: &mut [Complex64], n_system: u32) {
        match self {
            PrepApplier::Exact(e) => e.apply_to_slice(amps, n_system),
            PrepApplier::Random { forward, .. } => forward.run_unchecked(amps),
        }
    }

    pub(crate) fn apply_inverse(&self, amps: &mut [Complex64], n_system: u32) {
        match self {
            PrepApplier::Exact(e) => e.apply_to_slice(amps, n_system),
            PrepApplier::Random { adjoint, .. } => adjoint.run_unchecked(amps),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sykmodel::RegisterLayout;

    #[test]
    fn b_is_the_uniform_superposition() {
        let single = amplitude_readback(&build_b(1)).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((single[0] - r).abs() < 1e-15 && (single[1] - r).abs() < 1e-15);

        let eight = amplitude_readback(&build_b(8)).unwrap();
        assert_eq!(eight.len(), 256);
        for a in &eight {
            assert!((a - 1.0 / 16.0).abs() < 1e-12);
        }
        let norm_sq: f64 = eight.iter().map(|a| a * a).sum();
        assert!((norm_sq - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_prep_reproduces_prescribed_amplitudes() {
        // Single nonzero weight: a computational basis state.
        let basis = ExactPrep::new(&[0.0, 0.0, -2.5, 0.0]).unwrap();
        assert_eq!(basis.alpha(), &[0.0, 0.0, -1.0, 0.0]);
        let mut amps = vec![Complex64::new(0.0, 0.0); 4];
        amps[0] = Complex64::new(1.0, 0.0);
        basis.apply_to_slice(&mut amps, 0);
        for (l, a) in amps.iter().enumerate() {
            let want = basis.alpha()[l];
            assert!((a.re - want).abs() < 1e-14 && a.im == 0.0, "slot {l}");
        }

        // Uniform weights: equals the B readback.
        let uniform = ExactPrep::new(&[1.0; 16]).unwrap();
        let b = amplitude_readback(&build_b(4)).unwrap();
        for (a, bb) in uniform.alpha().iter().zip(&b) {
            assert!((a - bb).abs() < 1e-12);
        }

        // Random weights: unit norm and exact reproduction from |0⟩.
        let mut rng = SplitMix64::new(31);
        let w: Vec<f64> = (0..64).map(|_| rng.next_f64() - 0.5).collect();
        let prep = ExactPrep::new(&w).unwrap();
        let norm_sq: f64 = prep.alpha().iter().map(|a| a * a).sum();
        assert!((norm_sq - 1.0).abs() < 1e-12);
        let mut amps = vec![Complex64::new(0.0, 0.0); 64];
        amps[0] = Complex64::new(1.0, 0.0);
        prep.apply_to_slice(&mut amps, 0);
        for (l, a) in amps.iter().enumerate() {
            assert!((a.re - prep.alpha()[l]).abs() < 1e-13, "slot {l}");
        }
    }

    #[test]
    fn exact_prep_is_an_involution() {
        let mut rng = SplitMix64::new(9);
        let w: Vec<f64> = (0..32).map(|_| rng.next_f64() - 0.3).collect();
        let prep = ExactPrep::new(&w).unwrap();
        // On a register with 2 system qubits below the index register.
        let state = StateVector::random_state(7, 404);
        let mut amps = state.amps().to_vec();
        prep.apply_to_slice(&mut amps, 2);
        prep.apply_to_slice(&mut amps, 2);
        let diff: f64 = amps
            .iter()
            .zip(state.amps())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-13, "Q^2 deviates from identity by {diff}");
    }

    #[test]
    fn exact_prep_rejects_degenerate_input() {
        assert!(ExactPrep::new(&[0.0; 8]).is_err());
        assert!(ExactPrep::new(&[1.0, 2.0, 3.0]).is_err());
        // α = e₀ itself is fine: the reflector degenerates to the identity.
        let e0 = ExactPrep::new(&[1.0, 0.0]).unwrap();
        let mut amps = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        e0.apply_to_slice(&mut amps, 0);
        assert!((amps[0].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn random_prep_amplitudes_are_real_and_normalized() {
        let layout = RegisterLayout::for_modes(4).unwrap();
        for seed in [1u64, 2, 3] {
            let c = build_a_random(&layout, 5, seed).unwrap();
            let alpha = amplitude_readback(&c).unwrap();
            assert_eq!(alpha.len(), 256);
            let norm_sq: f64 = alpha.iter().map(|a| a * a).sum();
            assert!((norm_sq - 1.0).abs() < 1e-12, "seed {seed}");
        }
        assert!(build_a_random(&layout, 0, 1).is_err());
    }

    #[test]
    fn random_prep_is_seed_deterministic() {
        let layout = RegisterLayout::for_modes(4).unwrap();
        let a = build_a_random(&layout, 3, 11).unwrap();
        let b = build_a_random(&layout, 3, 11).unwrap();
        assert_eq!(a.export(), b.export());
        let c = build_a_random(&layout, 3, 12).unwrap();
        assert_ne!(a.export(), c.export());
    }

    #[test]
    fn default_depth_is_the_squared_register_width() {
        let l4 = RegisterLayout::for_modes(4).unwrap();
        assert_eq!(default_depth(&l4), 64);
        let l8 = RegisterLayout::for_modes(8).unwrap();
        assert_eq!(default_depth(&l8), 144);
    }

    #[test]
    fn applier_embeds_circuits_above_the_system() {
        // A 1-layer random circuit applied through the applier must match
        // running the shifted circuit directly.
        let layout = RegisterLayout::for_modes(4).unwrap();
        let c = build_a_random(&layout, 2, 77).unwrap();
        let prep = PrepOracle::Random(c.clone());
        let applier = PrepApplier::build(&prep, 4).unwrap();
        let state = StateVector::random_state(12, 5);

        let mut via_applier = state.amps().to_vec();
        applier.apply(&mut via_applier, 4);

        let mut direct = state.clone();
        c.shifted(4, 12).unwrap().run(&mut direct).unwrap();
        let diff: f64 = via_applier
            .iter()
            .zip(direct.amps())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-14);

        // Forward then inverse restores the state.
        applier.apply_inverse(&mut via_applier, 4);
        let diff: f64 = via_applier
            .iter()
            .zip(state.amps())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-13);
    }
}

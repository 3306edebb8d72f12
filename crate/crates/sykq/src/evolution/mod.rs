//! Time evolution by Chebyshev expansion of the exponential.
//!
//! e^{-i tau x} = J_0(tau) + 2 sum_{n>=1} (-i)^n J_n(tau) T_n(x), truncated
//! at a cutoff order K with tail bound 2 sum_{n>K} |J_n(tau)| <= epsilon.
//! Applied to a block encoding with x = H_eff/lambda and tau = lambda*t,
//! the T_n come either from the classical matrix recurrence or from walk
//! projections; the two routes must agree.

pub mod bessel;

pub use bessel::{
    bessel_j, bessel_j_array, bessel_j_series, cutoff_bruteforce, cutoff_formula, tail_bound,
};

use num_complex::Complex64;

use crate::error::{Result, SykError};
use crate::oracles::BlockEncoding;
use crate::simkernel::{DenseOperator, StateVector};
use crate::walk::{chebyshev_t_matrices, WalkOperator};

/// How the truncation order of a plan is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffStrategy {
    /// Closed-form ceiling (cheap, within a few orders of minimal).
    Formula,
    /// Minimal K from the scanned tail sums (guarantees the epsilon bound).
    Bruteforce,
}

/// Which Chebyshev matrices back the synthesized operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthesisPath {
    /// Three-term matrix recurrence on the encoded block.
    Classical,
    /// Projections of walk powers.
    Walk,
}

/// Truncated Chebyshev expansion of e^{-i tau x}.
#[derive(Debug, Clone)]
pub struct EvolutionPlan {
    pub tau: f64,
    pub epsilon: f64,
    pub k: u32,
    /// coeffs[n] multiplies T_n: c_0 = J_0(tau), c_n = 2(-i)^n J_n(tau).
    pub coeffs: Vec<Complex64>,
}

impl EvolutionPlan {
    /// Evaluate the expansion at a scalar x (exact for |x| <= 1 up to the
    /// truncation tail).
    pub fn scalar_value(&self, x: f64) -> Complex64 {
        let mut acc = self.coeffs[0];
        if self.coeffs.len() == 1 {
            return acc;
        }
        let mut t_prev = 1.0f64;
        let mut t_cur = x;
        acc += self.coeffs[1] * t_cur;
        for c in &self.coeffs[2..] {
            let t_next = 2.0 * x * t_cur - t_prev;
            t_prev = t_cur;
            t_cur = t_next;
            acc += c * t_next;
        }
        acc
    }

    /// The truncation-tail bound 2 sum_{n>K} |J_n(tau)| for this plan.
    pub fn tail_bound(&self) -> f64 {
        if self.tau == 0.0 {
            0.0
        } else {
            bessel::tail_bound(self.tau.abs(), self.k)
        }
    }
}

/// Build the coefficient plan for e^{-i tau x} to target error epsilon.
/// tau = 0 yields the exact one-term identity plan. Coefficients keep the
/// parity pattern exactly: even orders real, odd orders imaginary.
pub fn make_plan(tau: f64, epsilon: f64, strategy: CutoffStrategy) -> Result<EvolutionPlan> {
    if !tau.is_finite() {
        return Err(SykError::InvalidArgument(format!("tau must be finite, got {tau}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(SykError::InvalidArgument(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    let k = if tau == 0.0 {
        1
    } else {
        match strategy {
            CutoffStrategy::Formula => cutoff_formula(tau.abs(), epsilon)?,
            CutoffStrategy::Bruteforce => cutoff_bruteforce(tau.abs(), epsilon)?,
        }
    };
    let j = bessel_j_array(k, tau);
    let mut coeffs = Vec::with_capacity(k as usize + 1);
    coeffs.push(Complex64::new(j[0], 0.0));
    for (n, &jn) in j.iter().enumerate().skip(1) {
        coeffs.push(match n % 4 {
            0 => Complex64::new(2.0 * jn, 0.0),
            1 => Complex64::new(0.0, -2.0 * jn),
            2 => Complex64::new(-2.0 * jn, 0.0),
            _ => Complex64::new(0.0, 2.0 * jn),
        });
    }
    Ok(EvolutionPlan { tau, epsilon, k, coeffs })
}

/// Dense approximation of e^{-i H_eff t} as sum_n c_n T_n(H_eff/lambda),
/// with the brute-force cutoff so the epsilon tail bound is guaranteed.
pub fn synthesize_evolution(
    enc: &BlockEncoding,
    t: f64,
    epsilon: f64,
    path: SynthesisPath,
) -> Result<DenseOperator> {
    let plan = make_plan(enc.lambda() * t, epsilon, CutoffStrategy::Bruteforce)?;
    let k = plan.k as usize;
    let mats = match path {
        SynthesisPath::Classical => chebyshev_t_matrices(&enc.normalized_block()?, k),
        SynthesisPath::Walk => WalkOperator::new(enc)?.chebyshev_projections(k)?,
    };
    let mut out = DenseOperator::zeros(mats[0].dim());
    for (mat, &c) in mats.iter().zip(&plan.coeffs) {
        out.add_scaled(mat, c);
    }
    Ok(out)
}

/// Apply the truncated evolution to a system state by the vector Chebyshev
/// recurrence. The result's norm can drift from 1 by up to epsilon (the
/// truncated series is not exactly unitary); it is returned as computed,
/// never renormalized.
pub fn evolve_state(
    enc: &BlockEncoding,
    state: &StateVector,
    t: f64,
    epsilon: f64,
) -> Result<StateVector> {
    let n_system = enc.layout().n_system();
    if state.n_qubits() != n_system {
        return Err(SykError::WidthMismatch { expected: n_system, actual: state.n_qubits() });
    }
    let plan = make_plan(enc.lambda() * t, epsilon, CutoffStrategy::Bruteforce)?;
    let h = enc.normalized_block()?;

    let mut b_prev: Vec<Complex64> = state.amps().to_vec();
    let mut acc: Vec<Complex64> = b_prev.iter().map(|&a| plan.coeffs[0] * a).collect();
    if plan.coeffs.len() > 1 {
        let mut b_cur = h.matvec(&b_prev);
        for (a, &b) in acc.iter_mut().zip(&b_cur) {
            *a += plan.coeffs[1] * b;
        }
        for c in &plan.coeffs[2..] {
            let hb = h.matvec(&b_cur);
            let b_next: Vec<Complex64> = hb
                .iter()
                .zip(&b_prev)
                .map(|(&x, &p)| 2.0 * x - p)
                .collect();
            b_prev = b_cur;
            b_cur = b_next;
            for (a, &b) in acc.iter_mut().zip(&b_cur) {
                *a += c * b;
            }
        }
    }

    let mut out = StateVector::zero_state(n_system);
    out.amps_mut().copy_from_slice(&acc);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::PrepMode;
    use crate::simkernel::exact_expm;
    use crate::sykmodel::{sample_couplings, IndexMode};

    fn exact_encoding(n: u32, seed: u64) -> BlockEncoding {
        let inst = sample_couplings(n, 1.0, IndexMode::DistinctSorted, seed).unwrap();
        BlockEncoding::with_exact_prep(inst).unwrap()
    }

    #[test]
    fn plan_coefficient_parity_is_exact() {
        let plan = make_plan(5.0, 1e-6, CutoffStrategy::Bruteforce).unwrap();
        for (n, c) in plan.coeffs.iter().enumerate() {
            if n % 2 == 0 {
                assert_eq!(c.im, 0.0, "even coefficient {n} must be real");
            } else {
                assert_eq!(c.re, 0.0, "odd coefficient {n} must be imaginary");
            }
        }
    }

    #[test]
    fn zero_tau_plan_is_the_identity_plan() {
        let plan = make_plan(0.0, 1e-8, CutoffStrategy::Formula).unwrap();
        assert_eq!(plan.k, 1);
        assert_eq!(plan.coeffs[0], Complex64::new(1.0, 0.0));
        assert_eq!(plan.coeffs[1], Complex64::new(0.0, 0.0));
        assert_eq!(plan.scalar_value(0.3), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn scalar_soundness_over_sampled_points() {
        // 200 uniform x in [-1, 1]: the plan value must match e^{-i tau x}
        // within epsilon when the cutoff comes from the tail scan.
        let mut rng = crate::rng::SplitMix64::new(41);
        for &(tau, eps) in &[(5.0f64, 1e-6f64), (12.0, 1e-10), (-5.0, 1e-6)] {
            let plan = make_plan(tau, eps, CutoffStrategy::Bruteforce).unwrap();
            assert!(plan.tail_bound() <= eps);
            for _ in 0..200 {
                let x = 2.0 * rng.next_f64() - 1.0;
                let exact = Complex64::new(0.0, -tau * x).exp();
                let got = plan.scalar_value(x);
                assert!((got - exact).norm() <= eps, "tau={tau} x={x}");
            }
        }
    }

    #[test]
    fn synthesized_operator_tracks_the_exact_exponential() {
        let enc = exact_encoding(4, 3);
        let lambda = enc.lambda();
        let t = 5.0 / lambda; // tau = 5
        let eps = 1e-6;
        let approx = synthesize_evolution(&enc, t, eps, SynthesisPath::Classical).unwrap();
        let exact = exact_expm(&enc.encoded_hamiltonian().unwrap(), t).unwrap();
        let mut diff = approx;
        diff.add_scaled(&exact, Complex64::new(-1.0, 0.0));
        assert!(diff.spectral_norm() <= eps, "{}", diff.spectral_norm());
    }

    #[test]
    fn zero_time_synthesizes_the_identity() {
        let enc = exact_encoding(4, 3);
        let op = synthesize_evolution(&enc, 0.0, 1e-8, SynthesisPath::Classical).unwrap();
        assert!(op.max_abs_diff(&DenseOperator::identity(16)) < 1e-14);
    }

    #[test]
    fn classical_and_walk_paths_agree() {
        let enc =
            BlockEncoding::with_random_prep(4, 1.0, IndexMode::AllTuples, 3, 11).unwrap();
        assert!(matches!(enc.prep_mode(), PrepMode::Random { .. }));
        let t = 2.0 / enc.lambda();
        let classical = synthesize_evolution(&enc, t, 1e-4, SynthesisPath::Classical).unwrap();
        let walk = synthesize_evolution(&enc, t, 1e-4, SynthesisPath::Walk).unwrap();
        let mut diff = classical;
        diff.add_scaled(&walk, Complex64::new(-1.0, 0.0));
        assert!(diff.spectral_norm() <= 1e-8, "{}", diff.spectral_norm());
    }

    #[test]
    fn evolve_state_matches_the_synthesized_operator() {
        let enc = exact_encoding(4, 9);
        let t = 3.0 / enc.lambda();
        let psi = StateVector::random_state(4, 21);
        let evolved = evolve_state(&enc, &psi, t, 1e-8).unwrap();
        let op = synthesize_evolution(&enc, t, 1e-8, SynthesisPath::Classical).unwrap();
        let direct = op.matvec(psi.amps());
        let max_diff = evolved
            .amps()
            .iter()
            .zip(&direct)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        assert!(max_diff < 1e-12);
        assert!((evolved.norm() - 1.0).abs() <= 1e-8, "norm drift beyond epsilon");
    }

    #[test]
    fn evolve_state_at_zero_time_returns_the_input() {
        let enc = exact_encoding(4, 9);
        let psi = StateVector::random_state(4, 2);
        let out = evolve_state(&enc, &psi, 0.0, 1e-6).unwrap();
        assert!(out.max_abs_diff(&psi) < 1e-14);
    }

    #[test]
    fn eigenvector_picks_up_the_right_phase() {
        let enc = exact_encoding(4, 5);
        let h = enc.encoded_hamiltonian().unwrap();
        let (vals, vecs) = h.eigh().unwrap();
        let idx = vals.len() - 1;
        let psi: Vec<Complex64> = (0..16).map(|r| vecs.get(r, idx)).collect();
        let mut state = StateVector::zero_state(4);
        state.amps_mut().copy_from_slice(&psi);
        let t = 1.0 / enc.lambda();
        let eps = 1e-8;
        let evolved = evolve_state(&enc, &state, t, eps).unwrap();
        let phase = Complex64::new(0.0, -vals[idx] * t).exp();
        let err = evolved
            .amps()
            .iter()
            .zip(&psi)
            .map(|(a, &b)| (a - phase * b).norm())
            .fold(0.0f64, f64::max);
        assert!(err <= eps, "{err}");
    }

    #[test]
    fn error_ordering_follows_epsilon() {
        let enc = exact_encoding(4, 6);
        let t = 4.0 / enc.lambda();
        let exact = exact_expm(&enc.encoded_hamiltonian().unwrap(), t).unwrap();
        let mut errs = Vec::new();
        for &eps in &[1e-3f64, 1e-9f64] {
            let approx = synthesize_evolution(&enc, t, eps, SynthesisPath::Classical).unwrap();
            let mut diff = approx;
            diff.add_scaled(&exact, Complex64::new(-1.0, 0.0));
            errs.push(diff.spectral_norm());
            assert!(*errs.last().unwrap() <= eps);
        }
        assert!(errs[1] <= errs[0], "tighter epsilon must not increase error");
    }

    #[test]
    fn width_mismatch_is_reported() {
        let enc = exact_encoding(4, 9);
        let psi = StateVector::random_state(3, 2);
        assert!(evolve_state(&enc, &psi, 1.0, 1e-6).is_err());
    }
}

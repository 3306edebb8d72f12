//! Dense complex matrices: the verification side of the crate.
//!
//! Circuits never materialize matrices; this module exists so tests and
//! check commands can compare simulated operators against ground truth.
//! It carries a self-contained cyclic Jacobi eigensolver for Hermitian
//! matrices (dimensions here are at most a few hundred, where Jacobi is
//! simple, accurate, and fast enough) plus the exact matrix exponential
//! built on it.

use num_complex::Complex64;

use crate::error::{Result, SykError};

#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    /// Row-major storage: entry (r, c) lives at r * dim + c.
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        DenseOperator { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    /// self += factor * other.
    pub fn add_scaled(&mut self, other: &DenseOperator, factor: Complex64) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += factor * b;
        }
    }

    pub fn scale(&mut self, factor: Complex64) {
        for a in &mut self.data {
            *a *= factor;
        }
    }

    pub fn matmul(&self, other: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = DenseOperator::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let out_row = &mut out.data[r * n..(r + 1) * n];
                for (o, b) in out_row.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for r in 0..n {
            let row = &self.data[r * n..(r + 1) * n];
            out[r] = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    pub fn dagger(&self) -> DenseOperator {
        let n = self.dim;
        let mut out = DenseOperator::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        out
    }

    pub fn kron(&self, other: &DenseOperator) -> DenseOperator {
        let (n, m) = (self.dim, other.dim);
        let mut out = DenseOperator::zeros(n * m);
        for r1 in 0..n {
            for c1 in 0..n {
                let a = self.data[r1 * n + c1];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for r2 in 0..m {
                    for c2 in 0..m {
                        out.set(r1 * m + r2, c1 * m + c2, a * other.get(r2, c2));
                    }
                }
            }
        }
        out
    }

    /// Largest entry magnitude (the max norm used by encoding checks).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry of |M - M^dagger|; 0 for exactly Hermitian matrices.
    pub fn hermiticity_defect_max(&self) -> f64 {
        let n = self.dim;
        let mut d: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                d = d.max((self.data[r * n + c] - self.data[c * n + r].conj()).norm());
            }
        }
        d
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations. Returns eigenvalues ascending and the unitary of column
    /// eigenvectors: self = V diag(vals) V^dagger. The caller vouches for
    /// Hermiticity; only the Hermitian part drives the rotations.
    pub fn eigh(&self) -> Result<(Vec<f64>, DenseOperator)> {
        let n = self.dim;
        if n == 0 {
            return Ok((Vec::new(), DenseOperator::zeros(0)));
        }
        let mut a = self.data.clone();
        let mut v = DenseOperator::identity(n);
        let scale = 1.0 + self.frobenius_norm();
        let max_sweeps = 100;
        let mut converged = false;
        for _ in 0..max_sweeps {
            let mut off = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[p * n + q].norm_sqr();
                }
            }
            if off.sqrt() <= 1e-14 * scale {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    let abs = apq.norm();
                    if abs <= 1e-300 {
                        continue;
                    }
                    // Unitary 2x2 that zeroes the (p,q) entry: a diagonal
                    // phase making the pivot real, then a real Jacobi
                    // rotation with the classic stable tangent formula.
                    let phase = apq / abs; // e^{i phi}
                    let app = a[p * n + p].re;
                    let aqq = a[q * n + q].re;
                    let tau = (aqq - app) / (2.0 * abs);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let e_m = phase.conj(); // e^{-i phi}
                    let e_p = phase;
                    // Column update: B = A U with U[p][p]=c, U[p][q]=s,
                    // U[q][p]=-s e^{-i phi}, U[q][q]=c e^{-i phi}.
                    for i in 0..n {
                        let aip = a[i * n + p];
                        let aiq = a[i * n + q];
                        a[i * n + p] = c * aip - s * e_m * aiq;
                        a[i * n + q] = s * aip + c * e_m * aiq;
                    }
                    // Row update: A' = U^dagger B.
                    for i in 0..n {
                        let api = a[p * n + i];
                        let aqi = a[q * n + i];
                        a[p * n + i] = c * api - s * e_p * aqi;
                        a[q * n + i] = s * api + c * e_p * aqi;
                    }
                    // Accumulate eigenvectors: V = V U.
                    for i in 0..n {
                        let vip = v.data[i * n + p];
                        let viq = v.data[i * n + q];
                        v.data[i * n + p] = c * vip - s * e_m * viq;
                        v.data[i * n + q] = s * vip + c * e_m * viq;
                    }
                }
            }
        }
        if !converged {
            // One final measurement so the error is informative.
            let mut off = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[p * n + q].norm_sqr();
                }
            }
            if off.sqrt() > 1e-10 * scale {
                return Err(SykError::NoConvergence(max_sweeps));
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        let vals: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
        order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).expect("NaN eigenvalue"));
        let sorted_vals: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
        let mut sorted_vecs = DenseOperator::zeros(n);
        for (new_c, &old_c) in order.iter().enumerate() {
            for r in 0..n {
                sorted_vecs.set(r, new_c, v.get(r, old_c));
            }
        }
        Ok((sorted_vals, sorted_vecs))
    }

    /// Spectral norm (largest singular value), computed from the Hermitian
    /// eigenproblem of M^dagger M. Fine at these dimensions; not meant for
    /// ill-conditioned 1e-16-scale distinctions.
    pub fn spectral_norm(&self) -> f64 {
        if self.dim == 0 {
            return 0.0;
        }
        let gram = self.dagger().matmul(self);
        let (vals, _) = gram.eigh().expect("Gram matrix eigensolve");
        vals.last().copied().unwrap_or(0.0).max(0.0).sqrt()
    }

    /// All singular values, ascending.
    pub fn singular_values(&self) -> Vec<f64> {
        let gram = self.dagger().matmul(self);
        let (vals, _) = gram.eigh().expect("Gram matrix eigensolve");
        vals.into_iter().map(|v| v.max(0.0).sqrt()).collect()
    }
}

/// Exact e^{-i h t} by eigendecomposition. The input must be Hermitian
/// within 1e-10 in max norm; the output is unitary to the same quality.
pub fn exact_expm(h: &DenseOperator, t: f64) -> Result<DenseOperator> {
    let defect = h.hermiticity_defect_max();
    if defect > 1e-10 {
        return Err(SykError::NotHermitian { defect });
    }
    let (vals, vecs) = h.eigh()?;
    let n = h.dim();
    let mut out = DenseOperator::zeros(n);
    // V diag(e^{-i val t}) V^dagger, assembled column by column.
    for r in 0..n {
        for c in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                let phase = Complex64::from_polar(1.0, -vals[k] * t);
                acc += vecs.get(r, k) * phase * vecs.get(c, k).conj();
            }
            out.set(r, c, acc);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_hermitian(dim: usize, seed: u64) -> DenseOperator {
        let mut g = crate::rng::GaussianStream::new(seed);
        let mut m = DenseOperator::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m.set(r, c, Complex64::new(g.sample(), g.sample()));
            }
        }
        let mut h = m.dagger();
        h.add_scaled(&m, Complex64::new(1.0, 0.0));
        h.scale(Complex64::new(0.5, 0.0));
        h
    }

    #[test]
    fn eigh_solves_a_known_two_by_two() {
        // [[0, 1], [1, 0]] has eigenvalues -1, +1.
        let mut m = DenseOperator::zeros(2);
        m.set(0, 1, Complex64::new(1.0, 0.0));
        m.set(1, 0, Complex64::new(1.0, 0.0));
        let (vals, vecs) = m.eigh().unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
        // Reconstruct.
        let mut recon = DenseOperator::zeros(2);
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    acc += vecs.get(r, k) * vals[k] * vecs.get(c, k).conj();
                }
                recon.set(r, c, acc);
            }
        }
        assert!(recon.max_abs_diff(&m) < 1e-14);
    }

    #[test]
    fn eigh_reconstructs_random_hermitian_matrices() {
        for (dim, seed) in [(3usize, 1u64), (16, 2), (40, 3)] {
            let h = random_hermitian(dim, seed);
            let (vals, vecs) = h.eigh().unwrap();
            // A V = V diag.
            let hv = h.matmul(&vecs);
            let mut vd = vecs.clone();
            for r in 0..dim {
                for c in 0..dim {
                    vd.set(r, c, vecs.get(r, c) * vals[c]);
                }
            }
            assert!(hv.max_abs_diff(&vd) < 1e-11, "dim {dim}");
            // V unitary.
            let gram = vecs.dagger().matmul(&vecs);
            assert!(gram.max_abs_diff(&DenseOperator::identity(dim)) < 1e-12);
            // Sorted.
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn spectral_norm_matches_hand_values() {
        // Nilpotent [[0, 2], [0, 0]] has spectral norm 2.
        let mut m = DenseOperator::zeros(2);
        m.set(0, 1, Complex64::new(2.0, 0.0));
        assert!((m.spectral_norm() - 2.0).abs() < 1e-12);
        // Hermitian diag(3, -5): norm 5.
        let mut d = DenseOperator::zeros(2);
        d.set(0, 0, Complex64::new(3.0, 0.0));
        d.set(1, 1, Complex64::new(-5.0, 0.0));
        assert!((d.spectral_norm() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn expm_at_t_zero_is_identity() {
        let h = random_hermitian(6, 4);
        let u = exact_expm(&h, 0.0).unwrap();
        assert!(u.max_abs_diff(&DenseOperator::identity(6)) < 1e-13);
    }

    #[test]
    fn expm_of_z_matches_diagonal_phases() {
        let mut z = DenseOperator::zeros(2);
        z.set(0, 0, Complex64::new(1.0, 0.0));
        z.set(1, 1, Complex64::new(-1.0, 0.0));
        let t = std::f64::consts::FRAC_PI_2;
        let u = exact_expm(&z, t).unwrap();
        assert!((u.get(0, 0) - Complex64::from_polar(1.0, -t)).norm() < 1e-14);
        assert!((u.get(1, 1) - Complex64::from_polar(1.0, t)).norm() < 1e-14);
        assert!(u.get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn expm_satisfies_the_group_property_and_unitarity() {
        let h = random_hermitian(4, 9);
        let (t1, t2) = (0.37, 1.21);
        let u1 = exact_expm(&h, t1).unwrap();
        let u2 = exact_expm(&h, t2).unwrap();
        let u12 = exact_expm(&h, t1 + t2).unwrap();
        assert!(u1.matmul(&u2).max_abs_diff(&u12) < 1e-10);
        let gram = u1.dagger().matmul(&u1);
        assert!(gram.max_abs_diff(&DenseOperator::identity(4)) < 1e-12);
    }

    #[test]
    fn expm_rejects_non_hermitian_input() {
        let mut m = DenseOperator::zeros(2);
        m.set(0, 1, Complex64::new(1.0, 0.0));
        assert!(matches!(exact_expm(&m, 1.0), Err(SykError::NotHermitian { .. })));
    }

    #[test]
    fn kron_and_matmul_compose_correctly() {
        // (A kron I)(I kron B) = A kron B for small random blocks.
        let a = random_hermitian(2, 11);
        let b = random_hermitian(2, 12);
        let id = DenseOperator::identity(2);
        let lhs = a.kron(&id).matmul(&id.kron(&b));
        let rhs = a.kron(&b);
        assert!(lhs.max_abs_diff(&rhs) < 1e-13);
    }
}

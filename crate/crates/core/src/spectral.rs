//! Eigendecomposition of Hermitian matrices by cyclic Jacobi rotations.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so every step
//! is a 2×2 unitary acting on rows and columns `p, q`.

use crate::herm::HermMat;
use crate::matrix::{CMat, C64, ZERO};

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// Eigenvalues sorted descending, eigenvectors as the matching orthonormal columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMat,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `max |λᵢ|`.
    pub fn op_norm(&self) -> f64 {
        self.max_eigenvalue().abs().max(self.min_eigenvalue().abs())
    }

    pub fn trace(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }

    pub fn eigenvector(&self, i: usize) -> Vec<C64> {
        (0..self.dim()).map(|r| self.eigenvectors[(r, i)]).collect()
    }

    /// `vᵢ vᵢ†`.
    pub fn projector(&self, i: usize) -> HermMat {
        HermMat::outer(&self.eigenvector(i))
    }

    /// Sum of the eigenprojectors whose eigenvalue satisfies `keep`.
    pub fn spectral_projector(&self, keep: impl Fn(f64) -> bool) -> HermMat {
        self.map_eigenvalues(|l| if keep(l) { 1.0 } else { 0.0 })
    }

    /// `Σ φ(λᵢ) vᵢ vᵢ†`.
    pub fn map_eigenvalues(&self, phi: impl Fn(f64) -> f64) -> HermMat {
        let n = self.dim();
        let mut acc = CMat::zeros(n, n);
        for (k, &l) in self.eigenvalues.iter().enumerate() {
            let w = phi(l);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vi = self.eigenvectors[(i, k)] * w;
                for j in 0..n {
                    acc[(i, j)] += vi * self.eigenvectors[(j, k)].conj();
                }
            }
        }
        HermMat::from_cmat_symmetrized(&acc)
    }

    pub fn reconstruct(&self) -> HermMat {
        self.map_eigenvalues(|l| l)
    }

    /// Sum of positive eigenvalues.
    pub fn positive_part_sum(&self) -> f64 {
        self.eigenvalues.iter().filter(|&&l| l > 0.0).sum()
    }

    /// Sum of negative eigenvalues.
    pub fn negative_part_sum(&self) -> f64 {
        self.eigenvalues.iter().filter(|&&l| l < 0.0).sum()
    }
}

/// Spectral decomposition of a Hermitian matrix.
pub fn spectral(f: &HermMat) -> Spectrum {
    let n = f.dim();
    let mut a = f.to_cmat();
    let mut v = CMat::identity(n);
    let scale = f.frobenius_norm().max(1.0);

    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= OFF_DIAGONAL_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let phase = apq / r;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // U = diag(1, conj(phase)) · [[c, s], [-s, c]]
                let u = [
                    [C64::new(c, 0.0), C64::new(s, 0.0)],
                    [-phase.conj() * s, phase.conj() * c],
                ];
                rotate(&mut a, &mut v, p, q, &u);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = CMat::from_fn(n, n, |r, c| v[(r, order[c])]);
    Spectrum {
        eigenvalues,
        eigenvectors,
    }
}

fn off_diagonal_norm(a: &CMat) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// `A ← U† A U`, `V ← V U` where `U` acts on coordinates `p, q`.
fn rotate(a: &mut CMat, v: &mut CMat, p: usize, q: usize, u: &[[C64; 2]; 2]) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u[0][0] + akq * u[1][0];
        a[(k, q)] = akp * u[0][1] + akq * u[1][1];
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u[0][0].conj() * apk + u[1][0].conj() * aqk;
        a[(q, k)] = u[0][1].conj() * apk + u[1][1].conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u[0][0] + vkq * u[1][0];
        v[(k, q)] = vkp * u[0][1] + vkq * u[1][1];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_hermitian, rng};

    fn residual(f: &HermMat, s: &Spectrum) -> f64 {
        s.reconstruct().sub(f).unwrap().frobenius_norm()
    }

    fn gram_error(s: &Spectrum) -> f64 {
        let g = s.eigenvectors.adjoint().matmul(&s.eigenvectors);
        g.max_abs_diff(&CMat::identity(s.dim()))
    }

    #[test]
    fn diagonal_example() {
        let s = spectral(&HermMat::diag(&[3.0, -1.0]));
        assert_eq!(s.eigenvalues, vec![3.0, -1.0]);
        assert_eq!(s.op_norm(), 3.0);
        assert_eq!(s.trace(), 2.0);
        assert!(!s.is_psd(1e-9));
    }

    #[test]
    fn pauli_x() {
        let x = HermMat::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let s = spectral(&x);
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!((s.eigenvalues[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_pivot() {
        let y = HermMat::new(2, vec![ZERO, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO]).unwrap();
        let s = spectral(&y);
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!(residual(&y, &s) < 1e-14);
    }

    #[test]
    fn random_reconstruction() {
        let mut r = rng(42);
        for n in 1..=6 {
            for _ in 0..30 {
                let f = random_hermitian(n, &mut r);
                let s = spectral(&f);
                let bound = 1e-9 * f.frobenius_norm().max(1.0);
                assert!(residual(&f, &s) <= bound);
                assert!(gram_error(&s) <= 1e-9);
                assert!(s.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let f = HermMat::identity(5).scale(0.3);
        let s = spectral(&f);
        assert!(s.eigenvalues.iter().all(|&l| (l - 0.3).abs() < 1e-15));
        assert!(gram_error(&s) < 1e-15);
    }

    #[test]
    fn larger_matrix_converges() {
        let mut r = rng(1);
        let f = random_hermitian(32, &mut r);
        let s = spectral(&f);
        assert!(residual(&f, &s) <= 1e-9 * f.frobenius_norm());
        assert!(gram_error(&s) <= 1e-9);
    }
}

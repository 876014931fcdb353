//! Seeded sampling used by the audits.
//!
//! All samplers draw from a `ChaCha8Rng`, so a seed fixes every sample on every
//! platform. Hermitian samples have i.i.d. standard Gaussian coordinates in the
//! basis of [`crate::herm::hermitian_basis`]; canonical-set samples clamp the
//! eigenvalues of such a matrix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::herm::HermMat;
use crate::matrix::{CMat, C64};

pub type AuditRng = ChaCha8Rng;

pub fn rng(seed: u64) -> AuditRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn random_hermitian(n: usize, rng: &mut impl Rng) -> HermMat {
    let coords: Vec<f64> = (0..n * n).map(|_| gaussian(rng)).collect();
    HermMat::from_coords(n, &coords).expect("valid dimension")
}

pub fn random_complex(rows: usize, cols: usize, rng: &mut impl Rng) -> CMat {
    CMat::from_fn(rows, cols, |_, _| C64::new(gaussian(rng), gaussian(rng)))
}

/// Unit vector, uniformly distributed on the complex sphere.
pub fn random_state(n: usize, rng: &mut impl Rng) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..n).map(|_| C64::new(gaussian(rng), gaussian(rng))).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-distributed unitary via Gram-Schmidt on Gaussian columns.
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> CMat {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| C64::new(gaussian(rng), gaussian(rng))).collect();
        for u in &cols {
            let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    CMat::from_fn(n, n, |i, j| cols[j][i])
}

/// Random element of `D(n)`: Gaussian eigenframe with eigenvalues clamped to `[0, 1]`.
pub fn sample_canonical_d(n: usize, rng: &mut impl Rng) -> HermMat {
    let s = random_hermitian(n, rng).spectral();
    s.map_eigenvalues(|l| l.clamp(0.0, 1.0))
}

/// Random element of `P(n)`: negative eigenvalues clamped to zero, then the trace
/// is capped at one.
pub fn sample_canonical_p(n: usize, rng: &mut impl Rng) -> HermMat {
    let s = random_hermitian(n, rng).spectral();
    let clamped = s.map_eigenvalues(|l| l.max(0.0));
    let tr = clamped.trace();
    if tr > 1.0 {
        let u: f64 = rng.random();
        clamped.scale(u / tr)
    } else {
        clamped
    }
}

/// Random point outside `D(n)` (a scaled or sign-flipped sample).
pub fn sample_non_member_d(n: usize, rng: &mut impl Rng) -> HermMat {
    let base = random_hermitian(n, rng);
    let s = base.spectral();
    if s.min_eigenvalue() < -1e-6 {
        base
    } else {
        base.scale((1.5 + 2.0 * rng.random::<f64>()) / s.op_norm().max(1e-3))
    }
}

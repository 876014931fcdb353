//! Spectral membership for `D(n)` and `P(n)`, and linear optimisation over them.

use super::{Canonical, MembershipVerdict, QcsError, Witness, DEFAULT_TOL};
use crate::herm::HermMat;
use crate::spectral::Spectrum;

pub fn canonical_membership(f: &HermMat, which: Canonical) -> MembershipVerdict {
    canonical_membership_tol(f, which, DEFAULT_TOL)
}

pub fn canonical_membership_tol(f: &HermMat, which: Canonical, tol: f64) -> MembershipVerdict {
    let s = f.spectral();
    match witness_from_spectrum(&s, which, tol) {
        None => MembershipVerdict::inside(1),
        Some(w) => MembershipVerdict::outside(w, 1),
    }
}

/// A matrix in the dual canonical set whose pairing with `f` leaves `[0, 1]`.
///
/// * `f` not positive: the projector onto an eigenvector of the most negative
///   eigenvalue (pairing `λ_min < 0`).
/// * `f ∉ D(n)`, positive: the top eigenprojector, which lies in `P(n)` (pairing `λ_max > 1`).
/// * `f ∉ P(n)`, positive: the identity, which lies in `D(n)` (pairing `tr f > 1`).
pub fn polar_witness(f: &HermMat, which: Canonical) -> Result<Witness, QcsError> {
    witness_from_spectrum(&f.spectral(), which, DEFAULT_TOL).ok_or(QcsError::AlreadyMember(which))
}

fn witness_from_spectrum(s: &Spectrum, which: Canonical, tol: f64) -> Option<Witness> {
    let n = s.dim();
    if s.min_eigenvalue() < -tol {
        return Some(Witness::from_pairing(
            s.projector(n - 1),
            s.min_eigenvalue(),
            format!("negative eigenprojector, in {}", which.dual()),
        ));
    }
    match which {
        Canonical::D if s.max_eigenvalue() > 1.0 + tol => Some(Witness::from_pairing(
            s.projector(0),
            s.max_eigenvalue(),
            "top eigenprojector, in P",
        )),
        Canonical::P if s.trace() > 1.0 + tol => {
            Some(Witness::from_pairing(HermMat::identity(n), s.trace(), "identity, in D"))
        }
        _ => None,
    }
}

/// `max { tr(m·x) : x ∈ which(n) }` and a maximiser.
pub(crate) fn maximize_linear(which: Canonical, m: &HermMat) -> (f64, HermMat) {
    let s = m.spectral();
    match which {
        Canonical::D => (s.positive_part_sum(), s.spectral_projector(|l| l > 0.0)),
        Canonical::P => {
            if s.max_eigenvalue() > 0.0 {
                (s.max_eigenvalue(), s.projector(0))
            } else {
                (0.0, HermMat::zeros(m.dim()))
            }
        }
    }
}

/// `min { tr(m·x) : x ∈ which(n) }` and a minimiser.
pub(crate) fn minimize_linear(which: Canonical, m: &HermMat) -> (f64, HermMat) {
    let (v, x) = maximize_linear(which, &m.scale(-1.0));
    (-v, x)
}

/// Pure states spanning `H(V)`: basis projectors and the projectors onto
/// `(eᵢ + eⱼ)/√2` and `(eᵢ + i·eⱼ)/√2`. `D(n)` additionally gets the identity.
pub(crate) fn spanning_members(which: Canonical, n: usize) -> Vec<HermMat> {
    use crate::matrix::C64;
    let mut out = Vec::with_capacity(n * n + 1);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..n {
        let mut v = vec![C64::new(0.0, 0.0); n];
        v[i] = C64::new(1.0, 0.0);
        out.push(HermMat::outer(&v));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for phase in [C64::new(h, 0.0), C64::new(0.0, h)] {
                let mut v = vec![C64::new(0.0, 0.0); n];
                v[i] = C64::new(h, 0.0);
                v[j] = phase;
                out.push(HermMat::outer(&v));
            }
        }
    }
    if which == Canonical::D && n > 1 {
        out.push(HermMat::identity(n));
    }
    out
}

/// Whether `g` is polar to all of `which(n)`.
#[cfg(test)]
fn polar_to_all(g: &HermMat, which: Canonical, tol: f64) -> bool {
    let lo = minimize_linear(which, g).0;
    let hi = maximize_linear(which, g).0;
    lo >= -tol && hi <= 1.0 + tol
}

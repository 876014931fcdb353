//! Polar and bipolar membership for finitely generated sets.
//!
//! `∼S` is a polyhedron cut out by the slabs `0 ≤ ⟨g, s⟩ ≤ 1`, so deciding
//! `f ∈ ∼∼S` means bounding `⟨f, ·⟩` over it: one LP for the infimum and one
//! for the supremum, in the orthonormal real coordinates of `H(V)`.

use super::{check_generators, MembershipVerdict, QcsError, Witness, DEFAULT_TOL, LP_CARRIER_CAP};
use crate::herm::{inner, HermMat};
use crate::lp::{dot, solve_lp, LpOutcome, LpProblem};

/// Whether `0 ≤ tr(fg) ≤ 1` up to `tol`.
pub fn is_polar_pair(f: &HermMat, g: &HermMat, tol: f64) -> Result<bool, QcsError> {
    let p = inner(f, g)?;
    Ok(p >= -tol && p <= 1.0 + tol)
}

/// `g ∈ ∼S`: a direct check against every generator.
pub fn polar_membership(g: &HermMat, gens: &[HermMat], tol: f64) -> Result<MembershipVerdict, QcsError> {
    let n = check_generators(gens)?;
    if g.dim() != n {
        return Err(QcsError::DimensionMismatch { expected: n, got: g.dim() });
    }
    for (k, s) in gens.iter().enumerate() {
        let p = inner(g, s)?;
        if p < -tol || p > 1.0 + tol {
            return Ok(MembershipVerdict::outside(
                Witness::from_pairing(s.clone(), p, format!("generator #{k}")),
                gens.len(),
            ));
        }
    }
    Ok(MembershipVerdict::inside(gens.len()))
}

/// `f ∈ ∼∼S` with the default tolerance.
pub fn bipolar_membership(f: &HermMat, gens: &[HermMat]) -> Result<MembershipVerdict, QcsError> {
    bipolar_membership_tol(f, gens, DEFAULT_TOL)
}

pub fn bipolar_membership_tol(f: &HermMat, gens: &[HermMat], tol: f64) -> Result<MembershipVerdict, QcsError> {
    let n = check_generators(gens)?;
    if f.dim() != n {
        return Err(QcsError::DimensionMismatch { expected: n, got: f.dim() });
    }
    if n > LP_CARRIER_CAP {
        return Err(QcsError::DimensionGuard { dim: n, cap: LP_CARRIER_CAP });
    }
    let rows: Vec<Vec<f64>> = gens.iter().map(HermMat::coords).collect();
    let c = f.coords();

    // Lower side: minimise ⟨f, g⟩.
    if let Some(w) = extreme_point(n, &rows, &c, -1.0, tol)? {
        return Ok(MembershipVerdict::outside(w, 1));
    }
    // Upper side: maximise ⟨f, g⟩.
    if let Some(w) = extreme_point(n, &rows, &c, 2.0, tol)? {
        return Ok(MembershipVerdict::outside(w, 2));
    }
    Ok(MembershipVerdict::inside(2))
}

/// Extremise `⟨f, g⟩` over `∼S` in the direction of `target` (−1 minimises,
/// 2 maximises). Returns a witness if the extreme value leaves `[0, 1]`.
/// An unbounded direction is followed until the pairing reaches `target`.
pub(crate) fn extreme_point(
    n: usize,
    rows: &[Vec<f64>],
    c: &[f64],
    target: f64,
    tol: f64,
) -> Result<Option<Witness>, QcsError> {
    let sign = if target < 0.0 { 1.0 } else { -1.0 };
    let mut lp = LpProblem::new(c.iter().map(|x| sign * x).collect());
    for r in rows {
        lp = lp.slab(r.clone(), 0.0, 1.0);
    }
    let point = match solve_lp(&lp)? {
        LpOutcome::Optimal { point, .. } => point,
        LpOutcome::Unbounded { point, ray } => {
            let base = dot(c, &point);
            let slope = dot(c, &ray);
            let t = ((target - base) / slope).max(0.0);
            point.iter().zip(&ray).map(|(p, r)| p + t * r).collect()
        }
        // 0 ∈ ∼S always, so this cannot happen for a well-formed problem.
        LpOutcome::Infeasible => return Ok(None),
    };
    finish(n, c, point, target, tol)
}

fn finish(n: usize, c: &[f64], point: Vec<f64>, target: f64, tol: f64) -> Result<Option<Witness>, QcsError> {
    let g = HermMat::from_coords(n, &point)?;
    let pairing = dot(c, &point);
    let violated = if target < 0.0 { pairing < -tol } else { pairing > 1.0 + tol };
    Ok(violated.then(|| Witness::from_pairing(g, pairing, "LP extreme point of the polar")))
}

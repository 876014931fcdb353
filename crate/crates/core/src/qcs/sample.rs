//! Seeded members of polar, bipolar and canonical sets for the audits.

use rand::Rng;
use serde::Serialize;

use super::{bipolar_membership, check_generators, Canonical, QcsDesc, QcsError};
use crate::herm::{kron, HermMat};
use crate::lp::{solve_lp, LpOutcome, LpProblem};
use crate::matrix::C64;
use crate::random::{random_hermitian, sample_canonical_d, sample_canonical_p, AuditRng};

/// Box half-width used to keep polar samples bounded.
const POLAR_BOX: f64 = 4.0;

/// How a sample was produced, which is also what guarantees its membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleTier {
    /// A generator of the set.
    Generator,
    /// A convex combination of generators and zero.
    Hull,
    /// A perturbed hull point confirmed by the LP oracle.
    LpConfirmed,
    /// A fixed boundary point of a canonical set.
    Boundary,
    /// A random point of a canonical set.
    Canonical,
    /// A rescaled LP vertex of a polar.
    Polar,
    /// A tensor product of factor members.
    Product,
    /// A convex combination of product members.
    Mixture,
    /// A point of the unit interval.
    Interval,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub f: HermMat,
    pub tier: SampleTier,
    /// For mixtures, the weights and products with `f = Σ wᵢ·pᵢ`; empty otherwise.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<(f64, HermMat)>,
}

fn sample(f: HermMat, tier: SampleTier) -> Sample {
    Sample { f, tier, parts: Vec::new() }
}

/// Up to `count` members of the set described by `desc`. Deterministic boundary
/// points and generators come first.
pub fn sample_members(desc: &QcsDesc, count: usize, rng: &mut AuditRng) -> Result<Vec<Sample>, QcsError> {
    desc.validate()?;
    let mut out = match desc {
        QcsDesc::CanonicalD(n) => canonical_samples(Canonical::D, *n, count, rng),
        QcsDesc::CanonicalP(n) => canonical_samples(Canonical::P, *n, count, rng),
        QcsDesc::Generated(s) => sample_bipolar_members(s, count, rng)?,
        QcsDesc::PolarOf(s) => sample_polar_members(s, count, rng)?
            .into_iter()
            .map(|f| sample(f, SampleTier::Polar))
            .collect(),
        QcsDesc::Unit => {
            let mut v = vec![sample(HermMat::scalar(0.0), SampleTier::Interval), sample(HermMat::scalar(1.0), SampleTier::Interval)];
            while v.len() < count {
                v.push(sample(HermMat::scalar(rng.random::<f64>()), SampleTier::Interval));
            }
            v
        }
        QcsDesc::TensorOf(a, b) => {
            let xs = sample_members(a, count, rng)?;
            let ys = sample_members(b, count, rng)?;
            let mut v = Vec::with_capacity(count);
            // Pair boundary points index-wise first, then mix.
            let pairs = count.div_ceil(2);
            for i in 0..pairs {
                let x = &xs[i % xs.len()].f;
                let y = &ys[(i + i / xs.len()) % ys.len()].f;
                v.push(sample(kron(x, y)?, SampleTier::Product));
            }
            let products: Vec<HermMat> = v.iter().map(|s| s.f.clone()).collect();
            while v.len() < count {
                let k = rng.random_range(1..=3.min(products.len()));
                let w = simplex_weights(k, rng);
                let mut m = HermMat::zeros(desc.carrier_dim());
                let mut parts = Vec::with_capacity(k);
                for wi in w {
                    let p = &products[rng.random_range(0..products.len())];
                    m = m.lincomb(1.0, p, wi)?;
                    parts.push((wi, p.clone()));
                }
                v.push(Sample {
                    f: m,
                    tier: SampleTier::Mixture,
                    parts,
                });
            }
            v
        }
    };
    out.truncate(count);
    Ok(out)
}

/// Basis projectors, projectors onto `(eᵢ ± eⱼ)/√2` and `(eᵢ ± i·eⱼ)/√2`, the
/// largest multiple of the identity in the set, then random members.
fn canonical_samples(which: Canonical, n: usize, count: usize, rng: &mut AuditRng) -> Vec<Sample> {
    let mut out = Vec::new();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let zero = C64::new(0.0, 0.0);
    for i in 0..n {
        let mut v = vec![zero; n];
        v[i] = C64::new(1.0, 0.0);
        out.push(sample(HermMat::outer(&v), SampleTier::Boundary));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for phase in [C64::new(h, 0.0), C64::new(-h, 0.0), C64::new(0.0, h), C64::new(0.0, -h)] {
                let mut v = vec![zero; n];
                v[i] = C64::new(h, 0.0);
                v[j] = phase;
                out.push(sample(HermMat::outer(&v), SampleTier::Boundary));
            }
        }
    }
    let top = match which {
        Canonical::D => HermMat::identity(n),
        Canonical::P => HermMat::identity(n).scale(1.0 / n as f64),
    };
    out.push(sample(top, SampleTier::Boundary));
    while out.len() < count {
        let f = match which {
            Canonical::D => sample_canonical_d(n, rng),
            Canonical::P => sample_canonical_p(n, rng),
        };
        out.push(sample(f, SampleTier::Canonical));
    }
    out
}

/// Members of `∼∼S`: the generators, zero, convex mixtures, and LP-confirmed
/// perturbations of mixtures (which can reach lineality directions).
pub fn sample_bipolar_members(gens: &[HermMat], count: usize, rng: &mut AuditRng) -> Result<Vec<Sample>, QcsError> {
    let n = check_generators(gens)?;
    let mut out: Vec<Sample> = gens.iter().map(|g| sample(g.clone(), SampleTier::Generator)).collect();
    out.push(sample(HermMat::zeros(n), SampleTier::Hull));
    let mut attempts = 0;
    while out.len() < count && attempts < 4 * count {
        attempts += 1;
        let hull = hull_point(gens, rng)?;
        let candidate = match attempts % 6 {
            // Along a generator line, beyond the hull in either direction.
            0 | 3 => {
                let s = &gens[rng.random_range(0..gens.len())];
                hull.lincomb(1.0, s, 4.0 * rng.random::<f64>() - 2.0)?
            }
            1 => hull.lincomb(1.0, &random_hermitian(n, rng), 0.5 * rng.random::<f64>())?,
            _ => {
                out.push(sample(hull, SampleTier::Hull));
                continue;
            }
        };
        if bipolar_membership(&candidate, gens)?.is_in() {
            out.push(sample(candidate, SampleTier::LpConfirmed));
        }
    }
    Ok(out)
}

fn hull_point(gens: &[HermMat], rng: &mut AuditRng) -> Result<HermMat, QcsError> {
    let w = simplex_weights(gens.len() + 1, rng);
    let mut m = HermMat::zeros(gens[0].dim());
    for (g, wi) in gens.iter().zip(&w) {
        m = m.lincomb(1.0, g, *wi)?;
    }
    Ok(m)
}

/// Members of `∼S`: vertices of `∼S` intersected with a coordinate box, found
/// by LPs with random objectives, then scaled by a uniform factor in `[0, 1]`.
pub fn sample_polar_members(gens: &[HermMat], count: usize, rng: &mut AuditRng) -> Result<Vec<HermMat>, QcsError> {
    let n = check_generators(gens)?;
    let dim = n * n;
    let mut base = LpProblem::new(vec![0.0; dim]);
    for s in gens {
        base = base.slab(s.coords(), 0.0, 1.0);
    }
    for k in 0..dim {
        let mut e = vec![0.0; dim];
        e[k] = 1.0;
        base = base.slab(e, -POLAR_BOX, POLAR_BOX);
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut lp = base.clone();
        lp.objective = (0..dim).map(|_| crate::random::gaussian(rng)).collect();
        let point = match solve_lp(&lp)? {
            LpOutcome::Optimal { point, .. } => point,
            _ => vec![0.0; dim],
        };
        let t: f64 = rng.random();
        let scaled: Vec<f64> = point.iter().map(|x| t * x).collect();
        out.push(HermMat::from_coords(n, &scaled)?);
    }
    Ok(out)
}

pub(crate) fn simplex_weights(k: usize, rng: &mut AuditRng) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

//! Membership in `∼∼{c₁⊗…⊗c_k}` for canonical and finitely generated factors.
//!
//! Finitely generated factors can be replaced by their generators, since
//! `∼{S⊗T} = ∼{∼∼S ⊗ ∼∼T}`. Canonical factors cannot, so the oracle runs a
//! cutting-plane loop: LPs against a finite set `G` of products, separation of
//! the LP extreme points by alternating eigenprojector ascent, and new cuts for
//! every violated product found.
//!
//! `In` answers are sound: `f ∈ ∼∼G` and `∼∼G` is inside the tensor product.
//! An `Out` answer needs a `g` polar to *all* products. With a finitely
//! generated factor the pairing range over products is computed exactly. With
//! two or more canonical factors it is bounded through partial transposes:
//! every product and every partial transpose of a product lies in `D(N)` (or
//! `P(N)` when all factors are `P`), so `tr(g·x)` is bracketed by the extreme
//! values of `g^Γ` over that set, for each partial transpose `Γ`.

use rand::Rng;

use super::canonical::{maximize_linear, minimize_linear, spanning_members};
use super::polar::extreme_point;
use super::{
    bipolar_membership_tol, unit_membership, Canonical, MembershipVerdict, QcsDesc, QcsError, Witness,
    DEFAULT_TOL, LP_CARRIER_CAP,
};
use crate::herm::{contract_factor, inner, kron, partial_transpose_factors, HermMat};
use crate::random::{random_state, rng, sample_canonical_d, sample_canonical_p, AuditRng};

const ASCENT_SWEEPS: usize = 100;
/// Restart multiplier for the second separation attempt before giving up on a candidate.
const RETRY_FACTOR: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct TensorOptions {
    /// Cutting-plane rounds.
    pub budget: usize,
    pub tol: f64,
    pub seed: u64,
    /// Random restarts per separation call.
    pub restarts: usize,
}

impl Default for TensorOptions {
    fn default() -> Self {
        TensorOptions {
            budget: 50,
            tol: DEFAULT_TOL,
            seed: 0,
            restarts: 8,
        }
    }
}

/// Membership in `C ⊗ D` with default options and the given cutting-plane budget.
pub fn tensor_membership(f: &HermMat, c: &QcsDesc, d: &QcsDesc, budget: usize) -> Result<MembershipVerdict, QcsError> {
    tensor_membership_with(
        f,
        c,
        d,
        &TensorOptions {
            budget,
            ..TensorOptions::default()
        },
    )
}

pub fn tensor_membership_with(
    f: &HermMat,
    c: &QcsDesc,
    d: &QcsDesc,
    opts: &TensorOptions,
) -> Result<MembershipVerdict, QcsError> {
    if opts.budget == 0 {
        return Err(QcsError::InvalidBudget);
    }
    let desc = QcsDesc::tensor(c.clone(), d.clone());
    desc.validate()?;
    let n = desc.carrier_dim();
    if f.dim() != n {
        return Err(QcsError::DimensionMismatch { expected: n, got: f.dim() });
    }
    if n > LP_CARRIER_CAP {
        return Err(QcsError::DimensionGuard { dim: n, cap: LP_CARRIER_CAP });
    }
    let parts = desc.normalized_factors();
    match parts.len() {
        0 => Ok(unit_membership(f.get(0, 0).re, opts.tol)),
        1 => parts[0].contains_with(f, opts),
        _ => {
            let factors = parts.iter().map(FactorSet::from_desc).collect::<Result<Vec<_>, _>>()?;
            Oracle::new(factors, opts).decide(f)
        }
    }
}

#[derive(Debug, Clone)]
enum FactorSet {
    Canonical(Canonical, usize),
    Finite(Vec<HermMat>),
}

impl FactorSet {
    fn from_desc(d: &QcsDesc) -> Result<Self, QcsError> {
        match d {
            QcsDesc::CanonicalD(n) => Ok(FactorSet::Canonical(Canonical::D, *n)),
            QcsDesc::CanonicalP(n) => Ok(FactorSet::Canonical(Canonical::P, *n)),
            QcsDesc::Generated(s) => Ok(FactorSet::Finite(s.clone())),
            QcsDesc::PolarOf(_) => Err(QcsError::Unsupported("polar factor in a tensor product".into())),
            QcsDesc::TensorOf(..) | QcsDesc::Unit => unreachable!("factors are normalized"),
        }
    }

    fn dim(&self) -> usize {
        match self {
            FactorSet::Canonical(_, n) => *n,
            FactorSet::Finite(s) => s[0].dim(),
        }
    }

    fn seeds(&self) -> Vec<HermMat> {
        match self {
            FactorSet::Canonical(which, n) => spanning_members(*which, *n),
            FactorSet::Finite(s) => s.clone(),
        }
    }

    fn sample(&self, rng: &mut AuditRng) -> HermMat {
        match self {
            FactorSet::Canonical(_, n) if rng.random_bool(0.5) => HermMat::outer(&random_state(*n, rng)),
            FactorSet::Canonical(Canonical::D, n) => sample_canonical_d(*n, rng),
            FactorSet::Canonical(Canonical::P, n) => sample_canonical_p(*n, rng),
            FactorSet::Finite(s) => s[rng.random_range(0..s.len())].clone(),
        }
    }

    fn center(&self) -> HermMat {
        match self {
            FactorSet::Canonical(Canonical::D, n) => HermMat::identity(*n),
            FactorSet::Canonical(Canonical::P, n) => HermMat::identity(*n).scale(1.0 / *n as f64),
            FactorSet::Finite(s) => s[0].clone(),
        }
    }
}

/// Bounds on `tr(g·x)` over all products `x`.
#[derive(Debug, Clone, Copy)]
struct PairingRange {
    lo: f64,
    hi: f64,
    exact: bool,
}

impl PairingRange {
    fn point(v: f64) -> Self {
        PairingRange { lo: v, hi: v, exact: true }
    }

    fn merge(self, other: PairingRange) -> Self {
        PairingRange {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
            exact: self.exact && other.exact,
        }
    }
}

struct Oracle<'a> {
    factors: Vec<FactorSet>,
    dims: Vec<usize>,
    opts: &'a TensorOptions,
    rng: AuditRng,
}

impl<'a> Oracle<'a> {
    fn new(factors: Vec<FactorSet>, opts: &'a TensorOptions) -> Self {
        let dims = factors.iter().map(FactorSet::dim).collect();
        Oracle {
            factors,
            dims,
            opts,
            rng: rng(opts.seed),
        }
    }

    fn n(&self) -> usize {
        self.dims.iter().product()
    }

    fn decide(mut self, f: &HermMat) -> Result<MembershipVerdict, QcsError> {
        let tol = self.opts.tol;
        if self.factors.iter().all(|x| matches!(x, FactorSet::Finite(_))) {
            let products = self.products(&self.factors.iter().map(FactorSet::seeds).collect::<Vec<_>>())?;
            return bipolar_membership_tol(f, &products, tol);
        }
        if let Some(w) = self.quick_witness(f)? {
            return Ok(MembershipVerdict::outside(w, 0));
        }
        if self.is_member_product(f)? {
            return Ok(MembershipVerdict::inside(0));
        }

        let mut cuts = self.products(&self.factors.iter().map(FactorSet::seeds).collect::<Vec<_>>())?;
        let c = f.coords();
        let n = self.n();
        for round in 1..=self.opts.budget {
            let rows: Vec<Vec<f64>> = cuts.iter().map(HermMat::coords).collect();
            let mut candidates = Vec::new();
            for target in [-1.0, 2.0] {
                if let Some(w) = extreme_point(n, &rows, &c, target, tol)? {
                    candidates.push(w);
                }
            }
            if candidates.is_empty() {
                return Ok(MembershipVerdict::inside_outer_approximation(round, cuts.len()));
            }
            let mut added = 0;
            for w in &candidates {
                let mut separated = false;
                for (sign, restarts) in [(1.0, 1), (-1.0, 1), (1.0, RETRY_FACTOR), (-1.0, RETRY_FACTOR)] {
                    if restarts > 1 && separated {
                        break;
                    }
                    let (value, parts) = self.extremize(&w.g, sign, restarts)?;
                    let violated = if sign > 0.0 { value > 1.0 + tol } else { value < -tol };
                    if violated {
                        separated = true;
                        let x = kron_all(&parts)?;
                        if !cuts.iter().any(|y| y.max_abs_diff(&x) < 1e-12) {
                            cuts.push(x);
                            added += 1;
                        }
                    }
                }
                if !separated {
                    if let Some(cert) = self.certify(f, &w.g)? {
                        return Ok(MembershipVerdict::outside(cert, round));
                    }
                }
            }
            if added == 0 {
                return Ok(MembershipVerdict::unresolved(round));
            }
        }
        Ok(MembershipVerdict::unresolved(self.opts.budget))
    }

    /// All products of one element from each list.
    fn products(&self, lists: &[Vec<HermMat>]) -> Result<Vec<HermMat>, QcsError> {
        let mut acc = vec![HermMat::scalar(1.0)];
        for list in lists {
            let mut next = Vec::with_capacity(acc.len() * list.len());
            for a in &acc {
                for b in list {
                    next.push(kron(a, b)?);
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Eigenprojectors of partial transposes of `f`, transposed back, and the
    /// identity; each is returned only if it certifiably separates `f`.
    fn quick_witness(&self, f: &HermMat) -> Result<Option<Witness>, QcsError> {
        let k = self.dims.len();
        let tol = self.opts.tol;
        let mut candidates = vec![HermMat::identity(self.n())];
        for m in 0..(1usize << (k - 1)) {
            let mask = mask_bits(m, k);
            let s = partial_transpose_factors(f, &self.dims, &mask)?.spectral();
            if s.min_eigenvalue() < -tol {
                candidates.push(partial_transpose_factors(&s.projector(s.dim() - 1), &self.dims, &mask)?);
            }
            if s.max_eigenvalue() > 1.0 + tol {
                candidates.push(partial_transpose_factors(&s.projector(0), &self.dims, &mask)?);
            }
        }
        for g in candidates {
            if let Some(w) = self.certify(f, &g)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    /// Rescales `g` into the polar of all products, if the pairing range allows,
    /// and returns it as a witness when it still separates `f`.
    fn certify(&self, f: &HermMat, g: &HermMat) -> Result<Option<Witness>, QcsError> {
        let tol = self.opts.tol;
        let r = self.range(g, &self.dims, &self.factors.iter().collect::<Vec<_>>())?;
        if r.lo < -tol {
            return Ok(None);
        }
        let g = if r.hi > 1.0 { g.scale(1.0 / r.hi) } else { g.clone() };
        let pairing = inner(f, &g)?;
        if pairing >= -tol && pairing <= 1.0 + tol {
            return Ok(None);
        }
        let note = if r.exact {
            format!("pairing with every product lies in [{:.3e}, {:.3e}]", r.lo, r.hi.min(1.0))
        } else {
            "pairing with every product bounded via partial transposes".to_string()
        };
        Ok(Some(Witness::from_pairing(g, pairing, note)))
    }

    fn range(&self, g: &HermMat, dims: &[usize], factors: &[&FactorSet]) -> Result<PairingRange, QcsError> {
        if let Some(i) = factors.iter().position(|x| matches!(x, FactorSet::Finite(_))) {
            let FactorSet::Finite(gens) = factors[i] else { unreachable!() };
            let (rest_dims, rest) = remove_at(dims, factors, i);
            let mut out: Option<PairingRange> = None;
            for s in gens {
                let h = contract_factor(g, dims, i, s)?;
                let r = self.range(&h, &rest_dims, &rest)?;
                out = Some(out.map_or(r, |o| o.merge(r)));
            }
            return Ok(out.expect("nonempty generators"));
        }
        let kinds: Vec<Canonical> = factors
            .iter()
            .map(|x| match x {
                FactorSet::Canonical(w, _) => *w,
                FactorSet::Finite(_) => unreachable!(),
            })
            .collect();
        Ok(match kinds.len() {
            0 => PairingRange::point(g.get(0, 0).re),
            1 => PairingRange {
                lo: minimize_linear(kinds[0], g).0,
                hi: maximize_linear(kinds[0], g).0,
                exact: true,
            },
            k => {
                let which = if kinds.contains(&Canonical::D) { Canonical::D } else { Canonical::P };
                let mut r = PairingRange {
                    lo: f64::NEG_INFINITY,
                    hi: f64::INFINITY,
                    exact: false,
                };
                for m in 0..(1usize << (k - 1)) {
                    let gm = partial_transpose_factors(g, dims, &mask_bits(m, k))?;
                    r.lo = r.lo.max(minimize_linear(which, &gm).0);
                    r.hi = r.hi.min(maximize_linear(which, &gm).0);
                }
                r
            }
        })
    }

    /// Largest (`sign = 1`) or smallest (`sign = −1`) pairing of `g` with a
    /// product found, and that product's factors. `factor` multiplies the
    /// number of random restarts.
    fn extremize(&mut self, g: &HermMat, sign: f64, factor: usize) -> Result<(f64, Vec<HermMat>), QcsError> {
        let factors = self.factors.clone();
        let dims = self.dims.clone();
        let found = self.extremize_over(g, sign, &dims, &factors.iter().collect::<Vec<_>>(), factor)?;
        Ok(found
            .into_iter()
            .max_by(|a, b| (sign * a.0).total_cmp(&(sign * b.0)))
            .expect("at least one local optimum"))
    }

    fn extremize_over(
        &mut self,
        g: &HermMat,
        sign: f64,
        dims: &[usize],
        factors: &[&FactorSet],
        factor: usize,
    ) -> Result<Vec<(f64, Vec<HermMat>)>, QcsError> {
        if let Some(i) = factors.iter().position(|x| matches!(x, FactorSet::Finite(_))) {
            let FactorSet::Finite(gens) = factors[i] else { unreachable!() };
            let (rest_dims, rest) = remove_at(dims, factors, i);
            let mut out = Vec::new();
            for s in gens {
                let h = contract_factor(g, dims, i, s)?;
                for (v, mut parts) in self.extremize_over(&h, sign, &rest_dims, &rest, factor)? {
                    parts.insert(i, s.clone());
                    out.push((v, parts));
                }
            }
            return Ok(out);
        }
        let kinds: Vec<Canonical> = factors
            .iter()
            .map(|x| match x {
                FactorSet::Canonical(w, _) => *w,
                FactorSet::Finite(_) => unreachable!(),
            })
            .collect();
        match kinds.len() {
            0 => Ok(vec![(g.get(0, 0).re, Vec::new())]),
            1 => {
                let (v, x) = maximize_linear(kinds[0], &g.scale(sign));
                Ok(vec![(sign * v, vec![x])])
            }
            _ => self.ascent(g, sign, dims, factors, self.opts.restarts * factor),
        }
    }

    /// Alternating maximisation of `sign·tr(g·(c₁⊗…⊗c_k))`, one factor at a
    /// time, from the center of each factor and from random restarts. A factor
    /// whose best response is zero is replaced by the top eigenprojector, since
    /// a zero factor would pin every later step at zero.
    fn ascent(
        &mut self,
        g: &HermMat,
        sign: f64,
        dims: &[usize],
        factors: &[&FactorSet],
        restarts: usize,
    ) -> Result<Vec<(f64, Vec<HermMat>)>, QcsError> {
        let kinds: Vec<Canonical> = factors
            .iter()
            .map(|x| match x {
                FactorSet::Canonical(w, _) => *w,
                FactorSet::Finite(_) => unreachable!(),
            })
            .collect();
        let gs = g.scale(sign);
        let mut starts = vec![factors.iter().map(|x| x.center()).collect::<Vec<_>>()];
        for _ in 0..restarts {
            starts.push(factors.iter().map(|x| x.sample(&mut self.rng)).collect());
        }
        let mut out = Vec::with_capacity(starts.len());
        for mut cur in starts {
            let mut value = f64::NEG_INFINITY;
            for _ in 0..ASCENT_SWEEPS {
                let before = value;
                for i in 0..cur.len() {
                    let h = contract_all_but(&gs, dims, &cur, i)?;
                    let (v, x) = maximize_linear(kinds[i], &h);
                    if v > 0.0 {
                        cur[i] = x;
                        value = v;
                    } else {
                        let s = h.spectral();
                        cur[i] = s.projector(0);
                        value = s.max_eigenvalue();
                    }
                }
                if value - before <= 1e-12 * (1.0 + value.abs()) {
                    break;
                }
            }
            out.push((sign * value, cur));
        }
        Ok(out)
    }

    /// Shortcut for `f = a⊗b` with both factors canonical: detects operator
    /// Schmidt rank one and checks that some rescaling puts each factor in its set.
    fn is_member_product(&self, f: &HermMat) -> Result<bool, QcsError> {
        let [FactorSet::Canonical(wa, na), FactorSet::Canonical(wb, nb)] = self.factors.as_slice() else {
            return Ok(false);
        };
        let Some((a, b)) = product_split(f, *na, *nb)? else {
            return Ok(false);
        };
        // f = a⊗b = (−a)⊗(−b); pick the sign making both positive.
        let (a, b) = if a.trace() >= 0.0 { (a, b) } else { (a.scale(-1.0), b.scale(-1.0)) };
        let (sa, sb) = (a.spectral(), b.spectral());
        let tol = self.opts.tol;
        if !sa.is_psd(tol) || !sb.is_psd(tol) {
            return Ok(false);
        }
        let size = |w: Canonical, s: &crate::spectral::Spectrum| match w {
            Canonical::D => s.max_eigenvalue(),
            Canonical::P => s.trace(),
        };
        Ok(size(*wa, &sa) * size(*wb, &sb) <= 1.0 + tol)
    }
}

fn mask_bits(m: usize, k: usize) -> Vec<bool> {
    (0..k).map(|i| (m >> i) & 1 == 1).collect()
}

fn remove_at<'f>(dims: &[usize], factors: &[&'f FactorSet], i: usize) -> (Vec<usize>, Vec<&'f FactorSet>) {
    let mut d = dims.to_vec();
    d.remove(i);
    let mut f = factors.to_vec();
    f.remove(i);
    (d, f)
}

fn contract_all_but(g: &HermMat, dims: &[usize], parts: &[HermMat], keep: usize) -> Result<HermMat, QcsError> {
    let mut h = g.clone();
    let mut d = dims.to_vec();
    for j in (0..parts.len()).rev() {
        if j != keep {
            h = contract_factor(&h, &d, j, &parts[j])?;
            d.remove(j);
        }
    }
    Ok(h)
}

fn kron_all(parts: &[HermMat]) -> Result<HermMat, QcsError> {
    let mut acc = HermMat::scalar(1.0);
    for p in parts {
        acc = kron(&acc, p)?;
    }
    Ok(acc)
}

/// Writes `f = a⊗b` when `f` has operator Schmidt rank one.
fn product_split(f: &HermMat, na: usize, nb: usize) -> Result<Option<(HermMat, HermMat)>, QcsError> {
    let dims = [na, nb];
    // Realignment: R[p][q] = ⟨f, eₚ⊗e_q⟩ in orthonormal Hermitian bases.
    let ea = crate::herm::hermitian_basis(na)?;
    let eb = crate::herm::hermitian_basis(nb)?;
    let mut r = vec![vec![0.0; eb.len()]; ea.len()];
    for (p, x) in ea.iter().enumerate() {
        let h = contract_factor(f, &dims, 0, x)?;
        for (q, y) in eb.iter().enumerate() {
            r[p][q] = inner(&h, y)?;
        }
    }
    // Top left singular vector of R from the Gram matrix R·Rᵀ.
    let m = ea.len();
    let gram: Vec<f64> = (0..m * m)
        .map(|idx| {
            let (p, q) = (idx / m, idx % m);
            r[p].iter().zip(&r[q]).map(|(x, y)| x * y).sum()
        })
        .collect();
    let s = HermMat::from_real(m, &gram)?.spectral();
    if s.max_eigenvalue() <= 0.0 {
        return Ok(Some((HermMat::zeros(na), HermMat::zeros(nb))));
    }
    let u: Vec<f64> = s.eigenvector(0).iter().map(|z| z.re).collect();
    let mut a = HermMat::zeros(na);
    for (p, x) in ea.iter().enumerate() {
        a = a.lincomb(1.0, x, u[p])?;
    }
    let mut b = HermMat::zeros(nb);
    for (q, y) in eb.iter().enumerate() {
        let coeff: f64 = (0..m).map(|p| u[p] * r[p][q]).sum();
        b = b.lincomb(1.0, y, coeff)?;
    }
    let residual = kron(&a, &b)?.max_abs_diff(f);
    Ok((residual <= 1e-10 * (1.0 + f.frobenius_norm())).then_some((a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::herm::swap_operator;
    use crate::matrix::C64;
    use crate::qcs::{Answer, Certificate};

    fn singlet() -> HermMat {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = C64::new(0.0, 0.0);
        HermMat::outer(&[z, C64::new(h, 0.0), C64::new(-h, 0.0), z])
    }

    #[test]
    fn singlet_is_out_with_swap_witness() {
        let d = QcsDesc::CanonicalD(2);
        let v = tensor_membership(&singlet(), &d, &d, 10).unwrap();
        assert_eq!(v.answer, Answer::Out);
        let w = v.witness.unwrap();
        assert!((w.pairing + 0.5).abs() < 1e-9);
        let half_swap = swap_operator(2).unwrap().scale(0.5);
        assert!(w.g.max_abs_diff(&half_swap) < 1e-9);
    }

    #[test]
    fn products_and_zero_are_in() {
        let d = QcsDesc::CanonicalD(2);
        let mut r = rng(5);
        for _ in 0..10 {
            let f = kron(&sample_canonical_d(2, &mut r), &sample_canonical_d(2, &mut r)).unwrap();
            assert!(tensor_membership(&f, &d, &d, 10).unwrap().is_in());
        }
        assert!(tensor_membership(&HermMat::zeros(4), &d, &d, 10).unwrap().is_in());
    }

    #[test]
    fn separable_mixture_is_in_via_cuts() {
        let d = QcsDesc::CanonicalD(2);
        let mut r = rng(6);
        let mut f = HermMat::zeros(4);
        for _ in 0..3 {
            let x = kron(&sample_canonical_d(2, &mut r), &sample_canonical_d(2, &mut r)).unwrap();
            f = f.lincomb(1.0, &x, 1.0 / 3.0).unwrap();
        }
        // Kelley-style cuts converge slowly on faces of the separable set.
        let v = tensor_membership(&f, &d, &d, 200).unwrap();
        assert_eq!(v.answer, Answer::In, "{v:?}");
    }

    #[test]
    fn canonical_outer_bound_cases() {
        // 2·I is outside D⊗D (pairing with a product projector is 2).
        let d = QcsDesc::CanonicalD(2);
        let v = tensor_membership(&HermMat::identity(4).scale(2.0), &d, &d, 10).unwrap();
        assert!(v.is_out());
        // P⊗P: I/4 has trace 1 and is a mixture of products.
        let p = QcsDesc::CanonicalP(2);
        let v = tensor_membership(&HermMat::identity(4).scale(0.25), &p, &p, 20).unwrap();
        assert!(v.is_in(), "{v:?}");
    }

    #[test]
    fn finite_factors_reduce_to_products() {
        let e = QcsDesc::generated(vec![HermMat::diag(&[1.0, 0.0])]).unwrap();
        let v = tensor_membership(&HermMat::diag(&[0.5, 0.0, 0.0, 0.0]), &e, &e, 5).unwrap();
        assert!(v.is_in());
        let v = tensor_membership(&HermMat::diag(&[0.0, 0.5, 0.0, 0.0]), &e, &e, 5).unwrap();
        assert!(v.is_out());
    }

    #[test]
    fn mixed_factor_witness_is_certified() {
        let e = QcsDesc::generated(vec![HermMat::diag(&[1.0, 0.0])]).unwrap();
        let d = QcsDesc::CanonicalD(2);
        // E₁₁ ⊗ 2E₁₁ is outside E ⊗ D.
        let f = HermMat::diag(&[2.0, 0.0, 0.0, 0.0]);
        let v = tensor_membership(&f, &e, &d, 5).unwrap();
        assert!(v.is_out());
        let inside = kron(&HermMat::diag(&[1.0, 0.0]), &HermMat::diag(&[0.3, 0.9])).unwrap();
        let v = tensor_membership(&inside, &e, &d, 20).unwrap();
        assert!(v.is_in(), "{v:?}");
    }

    #[test]
    fn unit_factor_delegates() {
        let v = tensor_membership(&HermMat::diag(&[0.5, 0.5]), &QcsDesc::Unit, &QcsDesc::CanonicalD(2), 1).unwrap();
        assert!(v.is_in());
        assert_eq!(v.certificate, Some(Certificate::Exact));
    }

    #[test]
    fn rejects_bad_input() {
        let d = QcsDesc::CanonicalD(2);
        assert_eq!(
            tensor_membership(&HermMat::zeros(4), &d, &d, 0),
            Err(QcsError::InvalidBudget)
        );
        let big = QcsDesc::CanonicalD(3);
        assert!(matches!(
            tensor_membership(&HermMat::zeros(9), &big, &big, 1),
            Err(QcsError::DimensionGuard { .. })
        ));
    }

    #[test]
    fn product_split_recovers_factors() {
        let mut r = rng(3);
        let a = sample_canonical_d(2, &mut r);
        let b = sample_canonical_p(3, &mut r);
        let f = kron(&a, &b).unwrap();
        let (x, y) = product_split(&f, 2, 3).unwrap().unwrap();
        assert!(kron(&x, &y).unwrap().max_abs_diff(&f) < 1e-10);
        assert!(product_split(&singlet(), 2, 2).unwrap().is_none());
    }
}

//! Mixed-state TQFTs: a pure (1+1)-dimensional theory post-composed with
//! `D(·)`, each generator `g` acting by conjugation with `λ^χ(g)·Z(g)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bord::{self, euler_char, relation_pairs, typecheck, BordError, BordType, Generator, Term, TermAlgebra};
use crate::choi::{choi_of_conjugation, compose_choi, hom_membership_audit, identity_choi, tensor_choi, ChoiError, ChoiMorphism};
use crate::frobenius::{FrobeniusAlgebra, FrobeniusError};
use crate::herm::{inner, HermError, kron, partial_trace, swap_operator, Factor, HermMat, MAX_CARRIER_DIM};
use crate::matrix::{CMat, C64};
use crate::qcs::{canonical_membership, tensor_membership, Canonical, QcsDesc, QcsError};
use crate::random::{random_hermitian, rng, sample_canonical_d};
use crate::report::CheckReport;

/// Tolerance for comparing two constructions that should agree exactly.
pub const CONSTRUCTION_TOL: f64 = 1e-12;
/// Number of product states in the tensor-gap demonstration.
pub const GAP_PRODUCT_SAMPLES: usize = 200;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MsError {
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error(transparent)]
    Choi(#[from] ChoiError),
    #[error(transparent)]
    Bord(#[from] BordError),
    #[error(transparent)]
    Herm(#[from] HermError),
    #[error(transparent)]
    Qcs(#[from] QcsError),
    #[error("scale must be positive and finite, got {0}")]
    InvalidLambda(f64),
    #[error("the second factor's scalar must be nonzero")]
    ZeroMu,
    #[error("algebra of dimension {dim} gives a {side}-dimensional swap Choi matrix, limit is {cap}")]
    TooLarge { dim: usize, side: usize, cap: usize },
    #[error("the tensor gap demonstration is only defined for n = 2, got {0}")]
    UnsupportedDimension(usize),
}

/// How `j` disjoint circles are sent to a coherent space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ObjectPolicy {
    /// `D(k) ⊗ … ⊗ D(k)`, the categorical tensor product.
    #[default]
    TensorOfComponents,
    /// `D(k^j)`, the canonical space of the tensor product of Hilbert spaces.
    CanonicalDOfProduct,
}

impl ObjectPolicy {
    pub fn object(self, k: usize, circles: usize) -> QcsDesc {
        match self {
            ObjectPolicy::TensorOfComponents => QcsDesc::tensor_power(&QcsDesc::CanonicalD(k), circles),
            ObjectPolicy::CanonicalDOfProduct => QcsDesc::CanonicalD(k.pow(circles as u32)),
        }
    }
}

impl fmt::Display for ObjectPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjectPolicy::TensorOfComponents => "tensor-of-components",
            ObjectPolicy::CanonicalDOfProduct => "canonical-d-of-product",
        })
    }
}

#[derive(Debug, Clone)]
pub struct MsTqft {
    algebra: FrobeniusAlgebra,
    lambda: f64,
    policy: ObjectPolicy,
    generator_chois: BTreeMap<Generator, ChoiMorphism>,
}

/// Conjugation by `scale^χ(g)·Z(g)` for every generator, with policy objects.
fn generator_chois(
    alg: &FrobeniusAlgebra,
    scale: f64,
    policy: ObjectPolicy,
) -> Result<BTreeMap<Generator, ChoiMorphism>, MsError> {
    let k = alg.dim();
    let side = k.pow(4);
    if side > MAX_CARRIER_DIM {
        return Err(MsError::TooLarge {
            dim: k,
            side,
            cap: MAX_CARRIER_DIM,
        });
    }
    let mut out = BTreeMap::new();
    for g in Generator::ALL {
        let z = alg.generator(g).scale_real(scale.powi(g.euler() as i32));
        let t = g.bord_type();
        let f = choi_of_conjugation(&z)?.with_objects(policy.object(k, t.inputs), policy.object(k, t.outputs))?;
        out.insert(g, f);
    }
    Ok(out)
}

/// Assembles the theory without auditing it.
pub fn build_ms(algebra: &FrobeniusAlgebra, lambda: f64, policy: ObjectPolicy) -> Result<MsTqft, MsError> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(MsError::InvalidLambda(lambda));
    }
    Ok(MsTqft {
        algebra: algebra.clone(),
        lambda,
        policy,
        generator_chois: generator_chois(algebra, lambda, policy)?,
    })
}

struct Functor<'a>(&'a MsTqft);

impl TermAlgebra for Functor<'_> {
    type Value = (ChoiMorphism, BordType);
    type Error = MsError;

    fn atom(&self, g: Generator) -> Result<Self::Value, MsError> {
        Ok((self.0.generator_chois[&g].clone(), g.bord_type()))
    }

    fn seq(&self, (f1, t1): Self::Value, (f2, t2): Self::Value) -> Result<Self::Value, MsError> {
        let t = BordType {
            inputs: t1.inputs,
            outputs: t2.outputs,
        };
        Ok((compose_choi(&f2, &f1)?, t))
    }

    fn par(&self, (f1, t1): Self::Value, (f2, t2): Self::Value) -> Result<Self::Value, MsError> {
        let t = BordType {
            inputs: t1.inputs + t2.inputs,
            outputs: t1.outputs + t2.outputs,
        };
        let f = tensor_choi(&f1, &f2)?;
        Ok((self.0.reobject(f, t)?, t))
    }
}

impl MsTqft {
    pub fn algebra(&self) -> &FrobeniusAlgebra {
        &self.algebra
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn policy(&self) -> ObjectPolicy {
        self.policy
    }

    pub fn generator_choi(&self, g: Generator) -> &ChoiMorphism {
        &self.generator_chois[&g]
    }

    pub fn generator_chois(&self) -> impl Iterator<Item = (Generator, &ChoiMorphism)> {
        self.generator_chois.iter().map(|(g, f)| (*g, f))
    }

    /// The object assigned to `circles` disjoint circles.
    pub fn object(&self, circles: usize) -> QcsDesc {
        self.policy.object(self.algebra.dim(), circles)
    }

    fn reobject(&self, f: ChoiMorphism, t: BordType) -> Result<ChoiMorphism, MsError> {
        Ok(f.with_objects(self.object(t.inputs), self.object(t.outputs))?)
    }

    /// Image of `term` assembled from generator images by composition and tensor.
    pub fn image(&self, term: &Term) -> Result<ChoiMorphism, MsError> {
        typecheck(term)?;
        Ok(term.fold(&Functor(self))?.0)
    }

    /// Conjugation by `λ^χ(term)·Z(term)`, computed from the evaluated matrix.
    pub fn direct_image(&self, term: &Term) -> Result<ChoiMorphism, MsError> {
        let t = typecheck(term)?;
        let z = bord::evaluate(term, &self.algebra)?.scale_real(self.lambda.powi(euler_char(term) as i32));
        self.reobject(choi_of_conjugation(&z)?, t)
    }

    /// Side of the Choi matrix of `term`'s image.
    fn choi_side(&self, t: BordType) -> usize {
        self.algebra.dim().pow((t.inputs + t.outputs) as u32)
    }
}

/// Feasibility of `χ(g)·t + log‖Z(g)‖ ≤ 0` for all generators, with `t = log λ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleAudit {
    pub norms: Vec<(Generator, f64)>,
    pub feasibility: Feasibility,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Feasibility {
    /// Every `t = log λ` in `[lo, hi]` works.
    Feasible { lo: f64, hi: f64 },
    /// The upper bound from a disk clashes with the lower bound from a pair of pants.
    Infeasible {
        upper: Generator,
        hi: f64,
        lower: Generator,
        lo: f64,
    },
    /// A cylinder generator has norm above one, which no scale can fix.
    CylinderTooLarge { generator: Generator, norm: f64 },
}

impl ScaleAudit {
    pub fn is_feasible(&self) -> bool {
        matches!(self.feasibility, Feasibility::Feasible { .. })
    }

    /// A feasible `λ`, the midpoint of the interval in log scale.
    pub fn lambda(&self) -> Option<f64> {
        match self.feasibility {
            Feasibility::Feasible { lo, hi } => Some((0.5 * (lo + hi)).exp()),
            _ => None,
        }
    }
}

/// Slack allowed between the bounds before the interval is declared empty.
const SCALE_SLACK: f64 = 1e-12;

pub fn scale_audit(algebra: &FrobeniusAlgebra) -> ScaleAudit {
    let norms: Vec<(Generator, f64)> = Generator::ALL
        .into_iter()
        .map(|g| (g, algebra.generator(g).op_norm()))
        .collect();
    let mut upper = (Generator::Cap, f64::INFINITY);
    let mut lower = (Generator::Mul, f64::NEG_INFINITY);
    for &(g, norm) in &norms {
        match g.euler() {
            1 if -norm.ln() < upper.1 => upper = (g, -norm.ln()),
            -1 if norm.ln() > lower.1 => lower = (g, norm.ln()),
            0 if norm > 1.0 + SCALE_SLACK => {
                return ScaleAudit {
                    feasibility: Feasibility::CylinderTooLarge { generator: g, norm },
                    norms,
                };
            }
            _ => {}
        }
    }
    let feasibility = if lower.1 <= upper.1 + SCALE_SLACK {
        let (lo, hi) = if lower.1 <= upper.1 {
            (lower.1, upper.1)
        } else {
            let mid = 0.5 * (lower.1 + upper.1);
            (mid, mid)
        };
        Feasibility::Feasible { lo, hi }
    } else {
        Feasibility::Infeasible {
            upper: upper.0,
            hi: upper.1,
            lower: lower.0,
            lo: lower.1,
        }
    };
    ScaleAudit { norms, feasibility }
}

/// Composable pairs `(t₁, t₂)` checked as `t₁ ; t₂`.
pub const COMPOSITION_CORPUS: [(&str, &str); 12] = [
    ("cap", "cup"),
    ("cap", "comul"),
    ("comul", "mul"),
    ("mul", "comul"),
    ("mul", "cup"),
    ("comul", "swap"),
    ("swap", "mul"),
    ("cap * cap", "mul"),
    ("id * cap", "mul"),
    ("comul", "cup * id"),
    ("comul ; swap", "mul"),
    ("id * comul", "mul * id"),
];

/// Pairs checked as `t₁ * t₂`.
pub const MONOIDAL_CORPUS: [(&str, &str); 6] = [
    ("id", "id"),
    ("cap", "id"),
    ("cap", "cap"),
    ("mul", "cup"),
    ("comul", "id"),
    ("cup", "swap"),
];

/// Accumulates the worst residual of one family of checks.
struct Family {
    name: &'static str,
    residual: f64,
    checked: usize,
    worst: String,
    skipped: Vec<String>,
}

impl Family {
    fn new(name: &'static str) -> Self {
        Family {
            name,
            residual: 0.0,
            checked: 0,
            worst: String::new(),
            skipped: Vec::new(),
        }
    }

    fn record(&mut self, label: String, a: &ChoiMorphism, b: &ChoiMorphism) {
        self.checked += 1;
        let r = a.choi().max_abs_diff(b.choi());
        if r > self.residual || self.worst.is_empty() {
            self.residual = self.residual.max(r);
            self.worst = label;
        }
    }

    fn report(self, tol: f64) -> CheckReport {
        let mut r = CheckReport::new(self.name, self.residual <= tol, self.residual)
            .with_note(format!("{} cases, worst: {}", self.checked, self.worst));
        for s in self.skipped {
            r = r.with_note(format!("skipped {s}: Choi carrier above {MAX_CARRIER_DIM}"));
        }
        r
    }
}

/// Checks composition, the monoidal product, identities and every Frobenius
/// relation on Choi matrices. Cases whose Choi matrix exceeds the carrier cap
/// are skipped with a note.
pub fn functor_axiom_check(ms: &MsTqft, tol: f64) -> Result<Vec<CheckReport>, MsError> {
    let fits = |t: &Term| typecheck(t).map(|ty| ms.choi_side(ty) <= MAX_CARRIER_DIM);

    let mut comp = Family::new("composition");
    for (a, b) in COMPOSITION_CORPUS {
        let (t1, t2) = (bord::parse(a)?, bord::parse(b)?);
        let whole = Term::seq(t1.clone(), t2.clone());
        let label = format!("({a}) ; ({b})");
        if !(fits(&t1)? && fits(&t2)? && fits(&whole)?) {
            comp.skipped.push(label);
            continue;
        }
        let composed = compose_choi(&ms.direct_image(&t2)?, &ms.direct_image(&t1)?)?;
        comp.record(label, &ms.direct_image(&whole)?, &composed);
    }

    let mut mon = Family::new("monoidal product");
    for (a, b) in MONOIDAL_CORPUS {
        let (t1, t2) = (bord::parse(a)?, bord::parse(b)?);
        let whole = Term::par(t1.clone(), t2.clone());
        let label = format!("({a}) * ({b})");
        if !fits(&whole)? {
            mon.skipped.push(label);
            continue;
        }
        let product = tensor_choi(&ms.direct_image(&t1)?, &ms.direct_image(&t2)?)?;
        mon.record(label, &ms.direct_image(&whole)?, &product);
    }

    let mut ident = Family::new("identity");
    for circles in 1..=2 {
        let term = bord::parse(&vec!["id"; circles].join(" * "))?;
        if !fits(&term)? {
            ident.skipped.push(format!("{circles} circles"));
            continue;
        }
        let expect = identity_choi(&ms.object(circles))?;
        ident.record(format!("{circles} circle(s)"), &ms.direct_image(&term)?, &expect);
        ident.record(format!("{circles} circle(s), from generators"), &ms.image(&term)?, &expect);
    }

    let mut reports = vec![comp.report(tol), mon.report(tol), ident.report(tol)];
    for rel in relation_pairs() {
        let name = format!("relation: {}", rel.name);
        if !(fits(&rel.lhs)? && fits(&rel.rhs)?) {
            reports.push(
                CheckReport::new(name, true, 0.0).with_note(format!("skipped: Choi carrier above {MAX_CARRIER_DIM}")),
            );
            continue;
        }
        let (l, r) = (ms.image(&rel.lhs)?, ms.image(&rel.rhs)?);
        let res = l.choi().max_abs_diff(r.choi());
        let chi = (euler_char(&rel.lhs), euler_char(&rel.rhs));
        let ok = res <= tol && chi.0 == chi.1;
        reports.push(
            CheckReport::new(name, ok, res).with_note(format!("{} = {}, χ = {} and {}", rel.lhs, rel.rhs, chi.0, chi.1)),
        );
    }
    Ok(reports)
}

/// Runs the hom membership audit on every generator image against its
/// policy objects. Report names are prefixed with the generator.
pub fn qcs_morphism_audit(ms: &MsTqft, samples: usize, seed: u64) -> Result<Vec<CheckReport>, MsError> {
    let mut out = Vec::new();
    for (i, (g, f)) in ms.generator_chois().enumerate() {
        for mut r in hom_membership_audit(f, samples, seed.wrapping_add(i as u64))? {
            r.check = format!("{g}: {}", r.check);
            out.push(r);
        }
    }
    Ok(out)
}

/// The trace-out theory and its audits.
#[derive(Debug, Clone)]
pub struct TraceOut {
    pub theory: MsTqft,
    pub reports: Vec<CheckReport>,
}

/// Tensors the theory of `a1` with the invertible theory `M ↦ μ^χ(M)` on
/// one-dimensional spaces and traces the second factor out.
///
/// The result is conjugation by `|μ|^χ·Z₁`, i.e. Euler rescaling with
/// `λ = |μ|`; the reports verify that identity at the Choi level and at the
/// level of a genuine two-factor partial trace, then rerun the functor and
/// morphism audits.
pub fn trace_out_build(a1: &FrobeniusAlgebra, mu: C64, samples: usize, seed: u64) -> Result<TraceOut, MsError> {
    if mu.norm() == 0.0 || !mu.is_finite() {
        return Err(MsError::ZeroMu);
    }
    let k = a1.dim();
    let policy = ObjectPolicy::default();
    let abs = mu.norm();

    // Built independently of `build_ms`: trace out the second factor of each
    // generator's conjugation, read off as a Choi matrix.
    let mut chois = BTreeMap::new();
    let mut trace_residual = 0.0f64;
    let mut r = rng(seed);
    for g in Generator::ALL {
        let t = g.bord_type();
        let (din, dout) = (k.pow(t.inputs as u32), k.pow(t.outputs as u32));
        let z1 = a1.generator(g);
        let z2 = CMat::from_vec(1, 1, vec![mu.powi(g.euler() as i32)]);
        let z = z1.kron(&z2);
        let traced_conj = |sigma: &HermMat| -> Result<HermMat, MsError> {
            let out = HermMat::from_cmat_symmetrized(&z.matmul(&sigma.to_cmat()).matmul(&z.adjoint()));
            Ok(partial_trace(&out, (dout, 1), Factor::Second)?)
        };
        let expect_scale = abs.powi(2 * g.euler() as i32);
        for _ in 0..4 {
            let sigma = random_hermitian(din, &mut r);
            let lifted = kron(&sigma, &HermMat::scalar(1.0))?;
            let got = traced_conj(&lifted)?;
            let want = sigma.conjugate_by(&z1)?.scale(expect_scale);
            trace_residual = trace_residual.max(got.max_abs_diff(&want));
        }
        // Choi matrix of the traced map: Σ Eᵢⱼ ⊗ tr₂(Z (Eᵢⱼ⊗1) Z†) equals
        // conjugation by |μ|^χ·Z₁ entrywise.
        let eff = z1.scale_real(abs.powi(g.euler() as i32));
        let f = choi_of_conjugation(&eff)?.with_objects(policy.object(k, t.inputs), policy.object(k, t.outputs))?;
        chois.insert(g, f);
    }
    let theory = MsTqft {
        algebra: a1.clone(),
        lambda: abs,
        policy,
        generator_chois: chois,
    };

    let reference = build_ms(a1, abs, policy)?;
    let mut choi_residual = 0.0f64;
    for g in Generator::ALL {
        choi_residual = choi_residual.max(theory.generator_choi(g).choi().max_abs_diff(reference.generator_choi(g).choi()));
    }
    let mut reports = vec![
        CheckReport::new(
            "trace-out over an invertible second factor = Euler rescaling of the first factor",
            choi_residual <= CONSTRUCTION_TOL,
            choi_residual,
        )
        .with_note(format!("compared against build_ms with λ = |μ| = {abs}")),
        CheckReport::new("partial trace of the two-factor conjugation", trace_residual <= CONSTRUCTION_TOL, trace_residual)
            .with_note("tr₂((Z₁⊗Z₂)(σ⊗1)(Z₁⊗Z₂)†) = |μ|^{2χ}·Z₁σZ₁† on random σ"),
    ];
    reports.extend(functor_axiom_check(&theory, 1e-9)?);
    reports.extend(qcs_morphism_audit(&theory, samples, seed)?);
    Ok(TraceOut { theory, reports })
}

/// Exhibits `D(ℂ²)⊗D(ℂ²) ⊊ D(ℂ⁴)` with the singlet projector `f` and `g = SWAP/2`.
pub fn tensor_gap_demo(n: usize, seed: u64) -> Result<Vec<CheckReport>, MsError> {
    if n != 2 {
        return Err(MsError::UnsupportedDimension(n));
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = C64::new(0.0, 0.0);
    let singlet = HermMat::projector(&[z, C64::new(h, 0.0), C64::new(-h, 0.0), z]);
    let swap = swap_operator(2)?;
    let g = swap.scale(0.5);

    let mut r = rng(seed);
    let mut pair_range = (f64::INFINITY, f64::NEG_INFINITY);
    let mut identity_residual = 0.0f64;
    for _ in 0..GAP_PRODUCT_SAMPLES {
        let c = sample_canonical_d(2, &mut r);
        let d = sample_canonical_d(2, &mut r);
        let cd = kron(&c, &d)?;
        let p = inner(&g, &cd)?;
        pair_range = (pair_range.0.min(p), pair_range.1.max(p));
        let lhs = inner(&swap, &cd)?;
        let rhs = inner(&c, &d)?;
        identity_residual = identity_residual.max((lhs - rhs).abs());
    }
    let excess = (-pair_range.0).max(pair_range.1 - 1.0).max(0.0);
    let swap_singlet = inner(&swap, &singlet)?;
    let g_singlet = inner(&g, &singlet)?;
    let in_d4 = canonical_membership(&singlet, Canonical::D);
    let d2 = QcsDesc::CanonicalD(2);
    let in_tensor = tensor_membership(&singlet, &d2, &d2, 50)?;

    Ok(vec![
        CheckReport::new("SWAP/2 pairs into [0,1] with product states", excess == 0.0, excess)
            .with_witness(g.clone())
            .with_note(format!(
                "{GAP_PRODUCT_SAMPLES} seeded pairs c⊗d with c, d ∈ D(2); pairings in [{:.6}, {:.6}]",
                pair_range.0, pair_range.1
            )),
        CheckReport::new("tr(SWAP·(c⊗d)) = tr(cd)", identity_residual <= CONSTRUCTION_TOL, identity_residual)
            .with_note(format!("{GAP_PRODUCT_SAMPLES} seeded pairs")),
        CheckReport::new(
            "tr(SWAP·singlet) = -1 and tr(g·singlet) = -1/2",
            (swap_singlet + 1.0).abs() <= CONSTRUCTION_TOL && (g_singlet + 0.5).abs() <= CONSTRUCTION_TOL,
            (g_singlet + 0.5).abs(),
        )
        .with_witness(singlet.clone())
        .with_note(format!("tr(SWAP·f) = {swap_singlet}, tr(g·f) = {g_singlet}")),
        CheckReport::new("singlet ∈ D(4)", in_d4.is_in(), 0.0)
            .with_witness(singlet.clone())
            .with_note("rank-one projector, eigenvalues {1, 0, 0, 0}"),
        CheckReport::new("singlet ∉ D(2) ⊗ D(2)", in_tensor.is_out(), 0.0)
            .with_witness(singlet)
            .with_note(match &in_tensor.witness {
                Some(w) => format!("tensor oracle: pairing {} with polar witness ({})", w.pairing, w.note),
                None => "tensor oracle gave no witness".into(),
            })
            .with_note(
                "D(V₁)⊗D(V₂) is strictly smaller than D(V₁⊗V₂), so the two object policies give different theories; \
                 the tensor-of-components policy is the categorical tensor product",
            ),
    ])
}

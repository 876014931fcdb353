//! Morphisms between coherent spaces as Choi matrices.
//!
//! A Hermitian `F` on `V⊗W` acts on `c ∈ H(V)` by `F(c) = tr_V((cᵀ⊗I)·F)`,
//! with the transpose taken in the computational basis. Under this convention
//! the conjugation `c ↦ ZcZ†` has the positive Choi matrix `Σ Eᵢⱼ ⊗ Z Eᵢⱼ Z†`.
//!
//! Composition goes through superoperator coordinates: `M[j][i] = ⟨b'ⱼ, F(bᵢ)⟩`
//! in orthonormal Hermitian bases `b` of `H(V)` and `b'` of `H(W)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::herm::{hermitian_basis, inner, interleave_permute, kron, HermError, HermMat, MAX_CARRIER_DIM};
use crate::matrix::{CMat, C64, ZERO};
use crate::qcs::{sample_members, Answer, QcsDesc, QcsError, Sample, SampleTier, TensorOptions};
use crate::random::rng;
use crate::report::CheckReport;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChoiError {
    #[error(transparent)]
    Herm(#[from] HermError),
    #[error(transparent)]
    Qcs(#[from] QcsError),
    #[error("carrier mismatch: expected dimension {expected}, got {got}")]
    Carrier { expected: usize, got: usize },
    #[error("codomain {codomain} does not match domain {domain}")]
    Objects { codomain: String, domain: String },
    #[error("superoperator shape {rows}x{cols} does not fit {out_dim}x{in_dim} carriers")]
    SuperopShape {
        rows: usize,
        cols: usize,
        in_dim: usize,
        out_dim: usize,
    },
    #[error("conjugation matrix must be nonempty and finite")]
    BadConjugation,
}

/// A Hermitian `F` on `V⊗W` together with the spaces it is meant to map between.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMorphism {
    choi: HermMat,
    in_dim: usize,
    out_dim: usize,
    domain: QcsDesc,
    codomain: QcsDesc,
}

impl ChoiMorphism {
    pub fn new(choi: HermMat, in_dim: usize, out_dim: usize, domain: QcsDesc, codomain: QcsDesc) -> Result<Self, ChoiError> {
        if in_dim * out_dim != choi.dim() {
            return Err(ChoiError::Carrier {
                expected: in_dim * out_dim,
                got: choi.dim(),
            });
        }
        domain.validate()?;
        codomain.validate()?;
        if domain.carrier_dim() != in_dim {
            return Err(ChoiError::Carrier {
                expected: in_dim,
                got: domain.carrier_dim(),
            });
        }
        if codomain.carrier_dim() != out_dim {
            return Err(ChoiError::Carrier {
                expected: out_dim,
                got: codomain.carrier_dim(),
            });
        }
        Ok(ChoiMorphism {
            choi,
            in_dim,
            out_dim,
            domain,
            codomain,
        })
    }

    /// Same matrix, new spaces.
    pub fn with_objects(self, domain: QcsDesc, codomain: QcsDesc) -> Result<Self, ChoiError> {
        ChoiMorphism::new(self.choi, self.in_dim, self.out_dim, domain, codomain)
    }

    pub fn choi(&self) -> &HermMat {
        &self.choi
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn domain(&self) -> &QcsDesc {
        &self.domain
    }

    pub fn codomain(&self) -> &QcsDesc {
        &self.codomain
    }

    pub fn apply(&self, c: &HermMat) -> Result<HermMat, ChoiError> {
        choi_apply(self, c)
    }
}

/// `Σ Eᵢⱼ⊗Eᵢⱼ` with domain and codomain `desc`.
pub fn identity_choi(desc: &QcsDesc) -> Result<ChoiMorphism, ChoiError> {
    let n = desc.carrier_dim();
    choi_of_conjugation(&CMat::identity(n))?.with_objects(desc.clone(), desc.clone())
}

/// `F(c)[k][l] = Σᵢⱼ c[j][i]·F[(j,k),(i,l)]`.
pub fn choi_apply(f: &ChoiMorphism, c: &HermMat) -> Result<HermMat, ChoiError> {
    let (n, m) = (f.in_dim, f.out_dim);
    if c.dim() != n {
        return Err(ChoiError::Carrier { expected: n, got: c.dim() });
    }
    let fm = &f.choi;
    let mut out = CMat::zeros(m, m);
    for k in 0..m {
        for l in 0..m {
            let mut acc = ZERO;
            for j in 0..n {
                for i in 0..n {
                    acc += c.get(j, i) * fm.get(j * m + k, i * m + l);
                }
            }
            out[(k, l)] = acc;
        }
    }
    debug_assert!(hermitian_defect(&out) <= 1e-12 * (1.0 + out.frobenius_norm()));
    Ok(HermMat::from_cmat_symmetrized(&out))
}

fn hermitian_defect(m: &CMat) -> f64 {
    m.max_abs_diff(&m.adjoint())
}

/// `Σ Eᵢⱼ ⊗ Z Eᵢⱼ Z†` for `Z: ℂⁿ → ℂᵐ`, with domain `D(n)` and codomain `D(m)`.
pub fn choi_of_conjugation(z: &CMat) -> Result<ChoiMorphism, ChoiError> {
    let (m, n) = z.shape();
    if m == 0 || n == 0 || !z.is_finite() {
        return Err(ChoiError::BadConjugation);
    }
    let dim = n * m;
    if dim > MAX_CARRIER_DIM {
        return Err(HermError::TooLarge(dim).into());
    }
    // Entry [(i,k),(j,l)] is (Z Eᵢⱼ Z†)[k][l] = Z[k][i]·conj(Z[l][j]).
    let mut data = vec![ZERO; dim * dim];
    for i in 0..n {
        for k in 0..m {
            for j in 0..n {
                for l in 0..m {
                    data[(i * m + k) * dim + (j * m + l)] = z[(k, i)] * z[(l, j)].conj();
                }
            }
        }
    }
    let choi = HermMat::from_cmat_symmetrized(&CMat::from_vec(dim, dim, data));
    ChoiMorphism::new(choi, n, m, QcsDesc::CanonicalD(n), QcsDesc::CanonicalD(m))
}

/// Real `m² × n²` matrix of a map `H(ℂⁿ) → H(ℂᵐ)` in orthonormal Hermitian bases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperopMatrix {
    pub in_dim: usize,
    pub out_dim: usize,
    /// Row-major, `out_dim²` rows of `in_dim²` entries.
    pub data: Vec<f64>,
}

impl SuperopMatrix {
    pub fn rows(&self) -> usize {
        self.out_dim * self.out_dim
    }

    pub fn cols(&self) -> usize {
        self.in_dim * self.in_dim
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols() + c]
    }

    pub fn identity(n: usize) -> Self {
        let k = n * n;
        let mut data = vec![0.0; k * k];
        for i in 0..k {
            data[i * k + i] = 1.0;
        }
        SuperopMatrix {
            in_dim: n,
            out_dim: n,
            data,
        }
    }

    /// `self ∘ rhs`.
    pub fn matmul(&self, rhs: &SuperopMatrix) -> Result<SuperopMatrix, ChoiError> {
        if self.in_dim != rhs.out_dim {
            return Err(ChoiError::Carrier {
                expected: self.in_dim,
                got: rhs.out_dim,
            });
        }
        let (r, k, c) = (self.rows(), self.cols(), rhs.cols());
        let mut data = vec![0.0; r * c];
        for i in 0..r {
            for t in 0..k {
                let a = self.get(i, t);
                if a == 0.0 {
                    continue;
                }
                for j in 0..c {
                    data[i * c + j] += a * rhs.get(t, j);
                }
            }
        }
        Ok(SuperopMatrix {
            in_dim: rhs.in_dim,
            out_dim: self.out_dim,
            data,
        })
    }

    pub fn max_abs_diff(&self, other: &SuperopMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Column `i` as the image of the `i`-th input basis element.
    fn image(&self, i: usize) -> Result<HermMat, ChoiError> {
        let coords: Vec<f64> = (0..self.rows()).map(|j| self.get(j, i)).collect();
        Ok(HermMat::from_coords(self.out_dim, &coords)?)
    }
}

pub fn superop_of_choi(f: &ChoiMorphism) -> Result<SuperopMatrix, ChoiError> {
    let bin = hermitian_basis(f.in_dim)?;
    let bout = hermitian_basis(f.out_dim)?;
    let (rows, cols) = (bout.len(), bin.len());
    let mut data = vec![0.0; rows * cols];
    for (i, b) in bin.iter().enumerate() {
        let img = choi_apply(f, b)?;
        for (j, e) in bout.iter().enumerate() {
            data[j * cols + i] = inner(e, &img)?;
        }
    }
    Ok(SuperopMatrix {
        in_dim: f.in_dim,
        out_dim: f.out_dim,
        data,
    })
}

/// `F = Σᵢ bᵢᵀ ⊗ Φ(bᵢ)`, with domain `D(n)` and codomain `D(m)`.
pub fn choi_of_superop(m: &SuperopMatrix) -> Result<ChoiMorphism, ChoiError> {
    let (n, k) = (m.in_dim, m.out_dim);
    if m.data.len() != k * k * n * n || n == 0 || k == 0 {
        return Err(ChoiError::SuperopShape {
            rows: k * k,
            cols: if k == 0 { 0 } else { m.data.len() / (k * k) },
            in_dim: n,
            out_dim: k,
        });
    }
    let mut acc = HermMat::zeros(n * k);
    for (i, b) in hermitian_basis(n)?.iter().enumerate() {
        let img = m.image(i)?;
        acc = acc.add(&kron(&b.transpose(), &img)?)?;
    }
    ChoiMorphism::new(acc, n, k, QcsDesc::CanonicalD(n), QcsDesc::CanonicalD(k))
}

/// `F₂ ∘ F₁`; the codomain of `F₁` must match the domain of `F₂` up to the
/// associativity and unit isomorphisms.
pub fn compose_choi(f2: &ChoiMorphism, f1: &ChoiMorphism) -> Result<ChoiMorphism, ChoiError> {
    if f1.out_dim != f2.in_dim {
        return Err(ChoiError::Carrier {
            expected: f2.in_dim,
            got: f1.out_dim,
        });
    }
    if !f1.codomain.equivalent(&f2.domain) {
        return Err(ChoiError::Objects {
            codomain: f1.codomain.to_string(),
            domain: f2.domain.to_string(),
        });
    }
    let m = superop_of_choi(f2)?.matmul(&superop_of_choi(f1)?)?;
    choi_of_superop(&m)?.with_objects(f1.domain.clone(), f2.codomain.clone())
}

/// Choi matrix of `c₁⊗c₂ ↦ F₁(c₁)⊗F₂(c₂)`.
pub fn tensor_choi(f1: &ChoiMorphism, f2: &ChoiMorphism) -> Result<ChoiMorphism, ChoiError> {
    let dim = f1.choi.dim() * f2.choi.dim();
    if dim > MAX_CARRIER_DIM {
        return Err(HermError::TooLarge(dim).into());
    }
    let k = kron(&f1.choi, &f2.choi)?;
    let f = interleave_permute(&k, (f1.in_dim, f1.out_dim, f2.in_dim, f2.out_dim))?;
    ChoiMorphism::new(
        f,
        f1.in_dim * f2.in_dim,
        f1.out_dim * f2.out_dim,
        QcsDesc::tensor(f1.domain.clone(), f2.domain.clone()),
        QcsDesc::tensor(f1.codomain.clone(), f2.codomain.clone()),
    )
}

/// Whether `F ⪰ 0`, i.e. the map is completely positive.
pub fn is_completely_positive(f: &ChoiMorphism, tol: f64) -> bool {
    f.choi.spectral().is_psd(tol)
}

/// Samples the domain and checks that every image lands in the codomain.
///
/// One report per sample tier, so generator checks, hull points and
/// LP-confirmed members of a generated domain are reported separately.
pub fn hom_membership_audit(f: &ChoiMorphism, samples: usize, seed: u64) -> Result<Vec<CheckReport>, ChoiError> {
    let mut r = rng(seed);
    let points = sample_members(&f.domain, samples, &mut r)?;
    let opts = TensorOptions {
        seed,
        ..TensorOptions::default()
    };
    let mut tiers: Vec<(SampleTier, Vec<&Sample>)> = Vec::new();
    for p in &points {
        match tiers.iter_mut().find(|(t, _)| *t == p.tier) {
            Some((_, v)) => v.push(p),
            None => tiers.push((p.tier, vec![p])),
        }
    }
    let mut reports = Vec::with_capacity(tiers.len());
    for (tier, cs) in tiers {
        let mut failures = 0;
        let mut unresolved = 0;
        let mut by_convexity = 0;
        let mut residual = 0.0f64;
        let mut first: Option<(HermMat, String)> = None;
        for s in &cs {
            let c = &s.f;
            // F(Σ wᵢpᵢ) = Σ wᵢF(pᵢ) lies in the convex codomain when every F(pᵢ) does.
            if !s.parts.is_empty() && parts_map_inside(f, &s.parts, &opts)? {
                by_convexity += 1;
                continue;
            }
            let img = choi_apply(f, c)?;
            let v = f.codomain.contains_with(&img, &opts)?;
            match v.answer {
                Answer::In => {}
                Answer::Out => {
                    failures += 1;
                    let w = v.witness.expect("Out carries a witness");
                    residual = residual.max(if w.pairing < 0.0 { -w.pairing } else { w.pairing - 1.0 });
                    if first.is_none() {
                        first = Some((
                            (*c).clone(),
                            format!("image pairs to {} with polar witness ({})", w.pairing, w.note),
                        ));
                    }
                }
                Answer::Unresolved => unresolved += 1,
            }
        }
        let name = format!("maps {} into {}: {}", f.domain, f.codomain, tier_label(tier));
        let mut rep = CheckReport::new(name, failures == 0 && unresolved == 0, residual)
            .with_note(format!("{} points, {} out, {} unresolved", cs.len(), failures, unresolved));
        if by_convexity > 0 {
            rep = rep.with_note(format!("{by_convexity} mixtures inside as mixtures of images inside"));
        }
        if tier == SampleTier::Generator {
            rep = rep.with_note("generator images are necessary; they cover the hull, not all of the double polar");
        }
        if let Some((c, note)) = first {
            rep = rep.with_witness(c).with_note(note);
        }
        reports.push(rep);
    }
    Ok(reports)
}

fn parts_map_inside(f: &ChoiMorphism, parts: &[(f64, HermMat)], opts: &TensorOptions) -> Result<bool, ChoiError> {
    for (_, p) in parts {
        if f.codomain.contains_with(&choi_apply(f, p)?, opts)?.answer != Answer::In {
            return Ok(false);
        }
    }
    Ok(true)
}

fn tier_label(t: SampleTier) -> &'static str {
    match t {
        SampleTier::Generator => "generators",
        SampleTier::Hull => "hull points",
        SampleTier::LpConfirmed => "LP-confirmed members",
        SampleTier::Boundary => "boundary points",
        SampleTier::Canonical => "sampled members",
        SampleTier::Polar => "polar vertices",
        SampleTier::Product => "product points",
        SampleTier::Mixture => "product mixtures",
        SampleTier::Interval => "interval points",
    }
}

#[derive(Serialize, Deserialize)]
struct MorphismWire {
    in_dim: usize,
    out_dim: usize,
    choi: HermMat,
    domain: QcsDesc,
    codomain: QcsDesc,
}

impl Serialize for ChoiMorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MorphismWire {
            in_dim: self.in_dim,
            out_dim: self.out_dim,
            choi: self.choi.clone(),
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChoiMorphism {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = MorphismWire::deserialize(d)?;
        ChoiMorphism::new(w.choi, w.in_dim, w.out_dim, w.domain, w.codomain).map_err(serde::de::Error::custom)
    }
}

/// Pauli X, handy in tests and examples.
pub fn pauli_x() -> CMat {
    CMat::from_vec(2, 2, vec![ZERO, C64::new(1.0, 0.0), C64::new(1.0, 0.0), ZERO])
}

//! Quantum coherent spaces.
//!
//! Two Hermitian matrices `f, g` on the same carrier are *polar* when
//! `0 ≤ tr(fg) ≤ 1`. The polar `∼C` of a set collects everything polar to every
//! element of `C`, and a set is a quantum coherent space when `∼∼C = C`.
//!
//! Sets are described by [`QcsDesc`] and decided by membership oracles that
//! return a [`MembershipVerdict`]. An `Out` verdict always carries a witness `g`
//! on the polar side whose pairing with the tested matrix falls outside `[0, 1]`.
//!
//! `D(n)` is read with the operator norm (`f ⪰ 0`, `‖f‖ₒₚ ≤ 1`): it is the only
//! reading under which `D(n)` and `P(n)` are each other's polars, because
//! `tr(fg) ≤ ‖f‖ₒₚ·tr(g)` for positive `f, g`.

mod audit;
mod canonical;
mod polar;
mod sample;
mod tensor;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::herm::{HermError, HermMat};
use crate::lp::LpError;

pub use audit::{qcs_axiom_suite, unit_object_audit};
pub use canonical::{canonical_membership, canonical_membership_tol, polar_witness};
pub use polar::{bipolar_membership, bipolar_membership_tol, is_polar_pair, polar_membership};
pub use sample::{sample_bipolar_members, sample_members, sample_polar_members, Sample, SampleTier};
pub use tensor::{tensor_membership, tensor_membership_with, TensorOptions};

/// Tolerance used wherever none is given.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Carrier dimension cap for LP-backed oracles (keeps LPs at ≤ 64 variables).
pub const LP_CARRIER_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QcsError {
    #[error(transparent)]
    Herm(#[from] HermError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generators have mixed carrier dimensions {0} and {1}")]
    MixedDimensions(usize, usize),
    #[error("carrier dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("carrier dimension {dim} exceeds the oracle cap of {cap}")]
    DimensionGuard { dim: usize, cap: usize },
    #[error("matrix is a member of {0}; no polar witness exists")]
    AlreadyMember(Canonical),
    #[error("iteration budget must be positive")]
    InvalidBudget,
    #[error("unsupported description: {0}")]
    Unsupported(String),
}

/// The two canonical spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Canonical {
    /// Positive matrices with operator norm at most one.
    D,
    /// Positive matrices with trace at most one.
    P,
}

impl Canonical {
    pub fn dual(self) -> Canonical {
        match self {
            Canonical::D => Canonical::P,
            Canonical::P => Canonical::D,
        }
    }
}

impl std::fmt::Display for Canonical {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Canonical::D => write!(f, "D"),
            Canonical::P => write!(f, "P"),
        }
    }
}

/// Description of a quantum coherent space.
#[derive(Debug, Clone, PartialEq)]
pub enum QcsDesc {
    CanonicalD(usize),
    CanonicalP(usize),
    /// `∼∼S`.
    Generated(Vec<HermMat>),
    /// `∼S`.
    PolarOf(Vec<HermMat>),
    /// `∼∼{c⊗d : c ∈ C, d ∈ D}`.
    TensorOf(Box<QcsDesc>, Box<QcsDesc>),
    /// `[0, 1]` on the one-dimensional carrier.
    Unit,
}

fn check_generators(gens: &[HermMat]) -> Result<usize, QcsError> {
    let first = gens.first().ok_or(QcsError::EmptyGenerators)?;
    let n = first.dim();
    if let Some(g) = gens.iter().find(|g| g.dim() != n) {
        return Err(QcsError::MixedDimensions(n, g.dim()));
    }
    Ok(n)
}

impl QcsDesc {
    pub fn generated(gens: Vec<HermMat>) -> Result<Self, QcsError> {
        check_generators(&gens)?;
        Ok(QcsDesc::Generated(gens))
    }

    pub fn polar_of(gens: Vec<HermMat>) -> Result<Self, QcsError> {
        check_generators(&gens)?;
        Ok(QcsDesc::PolarOf(gens))
    }

    pub fn tensor(a: QcsDesc, b: QcsDesc) -> Self {
        QcsDesc::TensorOf(Box::new(a), Box::new(b))
    }

    /// Left-nested tensor power; the zeroth power is [`QcsDesc::Unit`].
    pub fn tensor_power(base: &QcsDesc, k: usize) -> Self {
        match k {
            0 => QcsDesc::Unit,
            1 => base.clone(),
            _ => QcsDesc::tensor(QcsDesc::tensor_power(base, k - 1), base.clone()),
        }
    }

    pub fn carrier_dim(&self) -> usize {
        match self {
            QcsDesc::CanonicalD(n) | QcsDesc::CanonicalP(n) => *n,
            QcsDesc::Generated(g) | QcsDesc::PolarOf(g) => g[0].dim(),
            QcsDesc::TensorOf(a, b) => a.carrier_dim() * b.carrier_dim(),
            QcsDesc::Unit => 1,
        }
    }

    pub fn validate(&self) -> Result<(), QcsError> {
        match self {
            QcsDesc::CanonicalD(n) | QcsDesc::CanonicalP(n) => {
                if *n == 0 {
                    Err(HermError::ZeroDimension.into())
                } else if *n > crate::herm::MAX_CARRIER_DIM {
                    Err(HermError::TooLarge(*n).into())
                } else {
                    Ok(())
                }
            }
            QcsDesc::Generated(g) | QcsDesc::PolarOf(g) => check_generators(g).map(|_| ()),
            QcsDesc::TensorOf(a, b) => {
                a.validate()?;
                b.validate()?;
                let n = a.carrier_dim() * b.carrier_dim();
                if n > crate::herm::MAX_CARRIER_DIM {
                    return Err(HermError::TooLarge(n).into());
                }
                Ok(())
            }
            QcsDesc::Unit => Ok(()),
        }
    }

    /// Tensor factors with nesting flattened and unit factors removed.
    /// `D(1)` and `P(1)` both equal `[0, 1]` and count as units.
    pub fn normalized_factors(&self) -> Vec<QcsDesc> {
        match self {
            QcsDesc::TensorOf(a, b) => {
                let mut v = a.normalized_factors();
                v.extend(b.normalized_factors());
                v
            }
            QcsDesc::Unit | QcsDesc::CanonicalD(1) | QcsDesc::CanonicalP(1) => Vec::new(),
            other => vec![other.clone()],
        }
    }

    /// Equality up to the associativity and unit isomorphisms of the tensor product.
    pub fn equivalent(&self, other: &QcsDesc) -> bool {
        self.carrier_dim() == other.carrier_dim() && self.normalized_factors() == other.normalized_factors()
    }

    /// Membership with default options.
    pub fn contains(&self, f: &HermMat) -> Result<MembershipVerdict, QcsError> {
        self.contains_with(f, &TensorOptions::default())
    }

    pub fn contains_with(&self, f: &HermMat, opts: &TensorOptions) -> Result<MembershipVerdict, QcsError> {
        let n = self.carrier_dim();
        if f.dim() != n {
            return Err(QcsError::DimensionMismatch {
                expected: n,
                got: f.dim(),
            });
        }
        match self {
            QcsDesc::CanonicalD(_) => Ok(canonical_membership_tol(f, Canonical::D, opts.tol)),
            QcsDesc::CanonicalP(_) => Ok(canonical_membership_tol(f, Canonical::P, opts.tol)),
            QcsDesc::Generated(s) => bipolar_membership_tol(f, s, opts.tol),
            QcsDesc::PolarOf(s) => polar_membership(f, s, opts.tol),
            QcsDesc::TensorOf(a, b) => tensor_membership_with(f, a, b, opts),
            QcsDesc::Unit => Ok(unit_membership(f.get(0, 0).re, opts.tol)),
        }
    }
}

pub(crate) fn unit_membership(x: f64, tol: f64) -> MembershipVerdict {
    if (-tol..=1.0 + tol).contains(&x) {
        MembershipVerdict::inside(0)
    } else {
        let side = if x < 0.0 { Side::Below } else { Side::Above };
        MembershipVerdict::outside(
            Witness {
                g: HermMat::scalar(1.0),
                pairing: x,
                side,
                note: "g = 1 lies in [0,1]".into(),
            },
            0,
        )
    }
}

impl std::fmt::Display for QcsDesc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QcsDesc::CanonicalD(n) => write!(f, "D({n})"),
            QcsDesc::CanonicalP(n) => write!(f, "P({n})"),
            QcsDesc::Generated(g) => write!(f, "∼∼{{{} generators on C^{}}}", g.len(), g[0].dim()),
            QcsDesc::PolarOf(g) => write!(f, "∼{{{} generators on C^{}}}", g.len(), g[0].dim()),
            QcsDesc::TensorOf(a, b) => write!(f, "({a} ⊗ {b})"),
            QcsDesc::Unit => write!(f, "[0,1]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    In,
    Out,
    Unresolved,
}

/// Which side of `[0, 1]` a witness pairing falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Below,
    Above,
}

/// A polar-side matrix `g` with `tr(f·g) ∉ [0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub g: HermMat,
    pub pairing: f64,
    pub side: Side,
    /// What certifies that `g` lies on the polar side.
    pub note: String,
}

impl Witness {
    pub(crate) fn from_pairing(g: HermMat, pairing: f64, note: impl Into<String>) -> Self {
        let side = if pairing < 0.5 { Side::Below } else { Side::Above };
        Witness {
            g,
            pairing,
            side,
            note: note.into(),
        }
    }

    /// Whether the recorded pairing is a violation beyond `tol`.
    pub fn violates(&self, tol: f64) -> bool {
        self.pairing < -tol || self.pairing > 1.0 + tol
    }
}

/// What a decided verdict was certified against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Certificate {
    /// The set itself.
    Exact,
    /// The polyhedral outer approximation `∼G` of the polar of all products,
    /// for a finite set `G` of `cuts` product elements. An `In` answer is still
    /// sound, since `∼∼G` is contained in the tensor product.
    OuterApproximation { cuts: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipVerdict {
    pub answer: Answer,
    pub witness: Option<Witness>,
    pub iterations: usize,
    /// `None` when unresolved.
    pub certificate: Option<Certificate>,
}

impl MembershipVerdict {
    pub(crate) fn inside(iterations: usize) -> Self {
        MembershipVerdict {
            answer: Answer::In,
            witness: None,
            iterations,
            certificate: Some(Certificate::Exact),
        }
    }

    pub(crate) fn inside_outer_approximation(iterations: usize, cuts: usize) -> Self {
        MembershipVerdict {
            certificate: Some(Certificate::OuterApproximation { cuts }),
            ..MembershipVerdict::inside(iterations)
        }
    }

    pub(crate) fn outside(witness: Witness, iterations: usize) -> Self {
        MembershipVerdict {
            answer: Answer::Out,
            witness: Some(witness),
            iterations,
            certificate: Some(Certificate::Exact),
        }
    }

    pub(crate) fn unresolved(iterations: usize) -> Self {
        MembershipVerdict {
            answer: Answer::Unresolved,
            witness: None,
            iterations,
            certificate: None,
        }
    }

    pub fn is_in(&self) -> bool {
        self.answer == Answer::In
    }

    pub fn is_out(&self) -> bool {
        self.answer == Answer::Out
    }
}

#[derive(Serialize, Deserialize)]
struct DescWire {
    variant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<HermMat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<QcsDesc>>,
}

impl Serialize for QcsDesc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (variant, generators, factors) = match self {
            QcsDesc::CanonicalD(_) => ("D", None, None),
            QcsDesc::CanonicalP(_) => ("P", None, None),
            QcsDesc::Generated(g) => ("generated", Some(g.clone()), None),
            QcsDesc::PolarOf(g) => ("polar", Some(g.clone()), None),
            QcsDesc::TensorOf(a, b) => ("tensor", None, Some(vec![(**a).clone(), (**b).clone()])),
            QcsDesc::Unit => ("unit", None, None),
        };
        DescWire {
            variant: variant.into(),
            n: Some(self.carrier_dim()),
            generators,
            factors,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QcsDesc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = DescWire::deserialize(d)?;
        let need_n = || w.n.ok_or_else(|| D::Error::custom(format!("variant {:?} requires \"n\"", w.variant)));
        let desc = match w.variant.as_str() {
            "D" => QcsDesc::CanonicalD(need_n()?),
            "P" => QcsDesc::CanonicalP(need_n()?),
            "generated" | "polar" => {
                let gens = w
                    .generators
                    .clone()
                    .ok_or_else(|| D::Error::custom("variant requires \"generators\""))?;
                if w.variant == "generated" {
                    QcsDesc::generated(gens).map_err(D::Error::custom)?
                } else {
                    QcsDesc::polar_of(gens).map_err(D::Error::custom)?
                }
            }
            "tensor" => {
                let mut f = w
                    .factors
                    .clone()
                    .ok_or_else(|| D::Error::custom("variant \"tensor\" requires \"factors\""))?;
                if f.len() != 2 {
                    return Err(D::Error::custom("\"factors\" must hold exactly two descriptions"));
                }
                let b = f.pop().expect("two factors");
                let a = f.pop().expect("two factors");
                QcsDesc::tensor(a, b)
            }
            "unit" => QcsDesc::Unit,
            other => return Err(D::Error::custom(format!("unknown variant {other:?}"))),
        };
        desc.validate().map_err(D::Error::custom)?;
        if let Some(n) = w.n {
            if n != desc.carrier_dim() {
                return Err(D::Error::custom(format!(
                    "\"n\" = {n} does not match the carrier dimension {}",
                    desc.carrier_dim()
                )));
            }
        }
        Ok(desc)
    }
}

//! Commutative Frobenius algebras and their generator matrices.
//!
//! An algebra is given by structure constants `μ[a][b][c]` (`xₐ·x_b = Σ μ[a][b][c] x_c`)
//! and a counit `ε`. The unit is solved for, and the comultiplication is derived
//! from the multiplication and the pairing `P[a][b] = ε(xₐ·x_b)`: with `Q = P⁻¹`,
//! `Δ(x) = Σ_{b,c} Q[b][c]·(x·x_b)⊗x_c`.
//!
//! Matrices act on coordinates with `A^{⊗j}` flattened first-factor-outermost.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bord::{self, Generator};
use crate::matrix::{CMat, C64, ONE, ZERO};
use crate::random::AuditRng;
use crate::report::CheckReport;

/// Residual bound for every algebra law.
pub const RELATION_TOL: f64 = 1e-9;
/// Smallest admissible singular value of the pairing.
pub const PAIRING_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrobeniusError {
    #[error("algebra dimension must be positive")]
    ZeroDimension,
    #[error("malformed structure constants: {0}")]
    Malformed(String),
    #[error("no unit element (least-squares residual {0:.3e})")]
    NoUnit(f64),
    #[error("pairing is degenerate (smallest singular value {0:.3e})")]
    DegeneratePairing(f64),
    #[error("algebra laws fail: {0}")]
    Relations(String),
    #[error("change of basis is singular")]
    SingularBasis,
    #[error(transparent)]
    Bord(#[from] bord::BordError),
}

/// Raw algebra data, as read from a file. Validate with [`validate_frobenius`]
/// or [`FrobeniusAlgebra::new`].
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraData {
    pub dim: usize,
    /// `μ[a][b][c]` at index `(a·k + b)·k + c`.
    pub mu: Vec<C64>,
    pub counit: Vec<C64>,
    /// Weights `ε(eᵢ)` of the idempotent basis, when the data was given that way.
    pub theta: Option<Vec<f64>>,
}

impl AlgebraData {
    pub fn structure(dim: usize, mu: Vec<C64>, counit: Vec<C64>) -> Result<Self, FrobeniusError> {
        let d = AlgebraData {
            dim,
            mu,
            counit,
            theta: None,
        };
        d.check_shape()?;
        Ok(d)
    }

    /// `ℂᵏ` with idempotent basis `eᵢ·eⱼ = δᵢⱼ eᵢ` and `ε(eᵢ) = θᵢ`.
    pub fn semisimple(theta: &[f64]) -> Result<Self, FrobeniusError> {
        let k = theta.len();
        if k == 0 {
            return Err(FrobeniusError::ZeroDimension);
        }
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(FrobeniusError::Malformed("weights must be finite".into()));
        }
        let mut mu = vec![ZERO; k * k * k];
        for i in 0..k {
            mu[(i * k + i) * k + i] = ONE;
        }
        Ok(AlgebraData {
            dim: k,
            mu,
            counit: theta.iter().map(|&t| C64::new(t, 0.0)).collect(),
            theta: Some(theta.to_vec()),
        })
    }

    /// The ground field with `ε(1) = 1`.
    pub fn ground_field() -> Self {
        AlgebraData::semisimple(&[1.0]).expect("nonempty weights")
    }

    /// The group algebra `ℂ[ℤ/2]` in the group basis `{1, g}` with `ε(1) = 1`, `ε(g) = 0`.
    pub fn z2_group_algebra() -> Self {
        let mut mu = vec![ZERO; 8];
        mu[0] = ONE; // 1·1 = 1
        mu[2 + 1] = ONE; // 1·g = g
        mu[2 * 2 + 1] = ONE; // g·1 = g
        mu[3 * 2] = ONE; // g·g = 1
        AlgebraData {
            dim: 2,
            mu,
            counit: vec![ONE, ZERO],
            theta: None,
        }
    }

    fn check_shape(&self) -> Result<(), FrobeniusError> {
        let k = self.dim;
        if k == 0 {
            return Err(FrobeniusError::ZeroDimension);
        }
        if self.mu.len() != k * k * k {
            return Err(FrobeniusError::Malformed(format!(
                "expected {} structure constants, got {}",
                k * k * k,
                self.mu.len()
            )));
        }
        if self.counit.len() != k {
            return Err(FrobeniusError::Malformed(format!(
                "expected {k} counit entries, got {}",
                self.counit.len()
            )));
        }
        if self.mu.iter().chain(&self.counit).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(FrobeniusError::Malformed("entries must be finite".into()));
        }
        if let Some(t) = &self.theta {
            if t.len() != k {
                return Err(FrobeniusError::Malformed(format!("expected {k} weights, got {}", t.len())));
            }
        }
        Ok(())
    }

    pub fn mu(&self, a: usize, b: usize, c: usize) -> C64 {
        self.mu[(a * self.dim + b) * self.dim + c]
    }

    /// Re-expresses the algebra in the basis `yₐ = Σ_b T[b][a]·x_b`.
    pub fn change_basis(&self, t: &CMat) -> Result<AlgebraData, FrobeniusError> {
        let k = self.dim;
        if t.shape() != (k, k) {
            return Err(FrobeniusError::Malformed("change of basis must be k×k".into()));
        }
        let tinv = t.inverse().ok_or(FrobeniusError::SingularBasis)?;
        let mut mu = vec![ZERO; k * k * k];
        for a in 0..k {
            for b in 0..k {
                // yₐ·y_b in old coordinates.
                let mut old = vec![ZERO; k];
                for p in 0..k {
                    for q in 0..k {
                        let w = t[(p, a)] * t[(q, b)];
                        if w == ZERO {
                            continue;
                        }
                        for (c, o) in old.iter_mut().enumerate() {
                            *o += w * self.mu(p, q, c);
                        }
                    }
                }
                for c in 0..k {
                    mu[(a * k + b) * k + c] = (0..k).map(|r| tinv[(c, r)] * old[r]).sum();
                }
            }
        }
        let counit = (0..k).map(|a| (0..k).map(|b| t[(b, a)] * self.counit[b]).sum()).collect();
        Ok(AlgebraData {
            dim: k,
            mu,
            counit,
            theta: None,
        })
    }

    /// Solves `Σₐ uₐ μ[a][b][c] = δ_bc` in the least-squares sense.
    fn solve_unit(&self) -> Result<Vec<C64>, FrobeniusError> {
        let k = self.dim;
        let lhs = CMat::from_fn(k * k, k, |row, a| {
            let (b, c) = (row / k, row % k);
            self.mu(a, b, c)
        });
        let rhs = CMat::from_fn(k * k, 1, |row, _| if row / k == row % k { ONE } else { ZERO });
        let u = lhs.least_squares(&rhs).ok_or(FrobeniusError::NoUnit(f64::INFINITY))?;
        let residual = lhs.matmul(&u).max_abs_diff(&rhs);
        if residual > RELATION_TOL {
            return Err(FrobeniusError::NoUnit(residual));
        }
        Ok((0..k).map(|a| u[(a, 0)]).collect())
    }

    fn pairing(&self) -> CMat {
        let k = self.dim;
        CMat::from_fn(k, k, |a, b| (0..k).map(|c| self.mu(a, b, c) * self.counit[c]).sum())
    }
}

/// Validation outcome: one check per law, plus pairing data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrobeniusReport {
    pub checks: Vec<CheckReport>,
    pub pairing_min_singular_value: f64,
    /// Whether the algebra is unitary: positive weights in an idempotent
    /// basis, or a Hermitian positive-definite pairing in the given basis.
    pub unitary: bool,
}

impl FrobeniusReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks every law of a commutative Frobenius algebra.
///
/// Errors for malformed data, a missing unit or a degenerate pairing; the
/// remaining laws are reported as residuals.
pub fn validate_frobenius(data: &AlgebraData) -> Result<FrobeniusReport, FrobeniusError> {
    data.check_shape()?;
    let pairing = data.pairing();
    let smin = pairing.min_singular_value();
    if smin < PAIRING_TOL {
        return Err(FrobeniusError::DegeneratePairing(smin));
    }
    let unit = data.solve_unit()?;
    let alg = FrobeniusAlgebra::assemble(data.clone(), unit, &pairing);
    let g = |n| alg.generator(n);
    let (m, d, id, cap, cup) = (g(Generator::Mul), g(Generator::Comul), g(Generator::Id), g(Generator::Cap), g(Generator::Cup));
    let swap = g(Generator::Swap);

    let mut checks = Vec::new();
    let mut law = |name: &str, lhs: CMat, rhs: CMat| {
        let r = lhs.max_abs_diff(&rhs);
        checks.push(CheckReport::new(name, r <= RELATION_TOL, r));
    };
    law("commutativity", m.matmul(&swap), m.clone());
    law(
        "associativity",
        m.matmul(&m.kron(&id)),
        m.matmul(&id.kron(&m)),
    );
    law("left unit", m.matmul(&cap.kron(&id)), id.clone());
    law("right unit", m.matmul(&id.kron(&cap)), id.clone());
    law("left counit", cup.kron(&id).matmul(&d), id.clone());
    law("right counit", id.kron(&cup).matmul(&d), id.clone());
    law(
        "coassociativity",
        d.kron(&id).matmul(&d),
        id.kron(&d).matmul(&d),
    );
    let frob_mid = d.matmul(&m);
    law("frobenius (left)", m.kron(&id).matmul(&id.kron(&d)), frob_mid.clone());
    law("frobenius (right)", id.kron(&m).matmul(&d.kron(&id)), frob_mid);

    let unitary = match &data.theta {
        Some(t) => t.iter().all(|&x| x > 0.0),
        None => {
            let herm = pairing.max_abs_diff(&pairing.adjoint()) <= RELATION_TOL;
            herm && crate::herm::HermMat::from_cmat_symmetrized(&pairing).spectral().min_eigenvalue() > PAIRING_TOL
        }
    };
    Ok(FrobeniusReport {
        checks,
        pairing_min_singular_value: smin,
        unitary,
    })
}

/// A validated commutative Frobenius algebra with all generator matrices cached.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusAlgebra {
    data: AlgebraData,
    unit: Vec<C64>,
    comul: CMat,
    unitary: bool,
}

/// A generator and its matrix, of shape `k^out × k^in`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMap {
    pub generator: Generator,
    pub matrix: CMat,
    pub euler: i64,
}

impl FrobeniusAlgebra {
    pub fn new(data: AlgebraData) -> Result<Self, FrobeniusError> {
        let report = validate_frobenius(&data)?;
        if !report.pass() {
            let failed: Vec<String> = report
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("{} (residual {:.3e})", c.check, c.residual))
                .collect();
            return Err(FrobeniusError::Relations(failed.join(", ")));
        }
        let unit = data.solve_unit()?;
        let pairing = data.pairing();
        let mut alg = FrobeniusAlgebra::assemble(data, unit, &pairing);
        alg.unitary = report.unitary;
        Ok(alg)
    }

    fn assemble(data: AlgebraData, unit: Vec<C64>, pairing: &CMat) -> Self {
        let k = data.dim;
        let q = pairing.inverse().expect("pairing checked nondegenerate");
        // Δ(x_a) = Σ_{b,c} Q[b][c]·(x_a·x_b)⊗x_c, so entry [(d,c), a] = Σ_b Q[b][c]·μ[a][b][d].
        let comul = CMat::from_fn(k * k, k, |row, a| {
            let (d, c) = (row / k, row % k);
            (0..k).map(|b| q[(b, c)] * data.mu(a, b, d)).sum()
        });
        FrobeniusAlgebra {
            data,
            unit,
            comul,
            unitary: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.data.dim
    }

    pub fn data(&self) -> &AlgebraData {
        &self.data
    }

    pub fn unit(&self) -> &[C64] {
        &self.unit
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn theta(&self) -> Option<&[f64]> {
        self.data.theta.as_deref()
    }

    pub fn generator_map(&self, g: Generator) -> GeneratorMap {
        GeneratorMap {
            generator: g,
            matrix: self.generator(g),
            euler: g.euler(),
        }
    }

    pub(crate) fn generator(&self, g: Generator) -> CMat {
        let k = self.data.dim;
        match g {
            Generator::Cap => CMat::from_fn(k, 1, |a, _| self.unit[a]),
            Generator::Cup => CMat::from_fn(1, k, |_, a| self.data.counit[a]),
            Generator::Mul => CMat::from_fn(k, k * k, |c, col| self.data.mu(col / k, col % k, c)),
            Generator::Comul => self.comul.clone(),
            Generator::Id => CMat::identity(k),
            Generator::Swap => CMat::from_fn(k * k, k * k, |row, col| {
                let (a, b) = (col / k, col % k);
                if row == b * k + a {
                    ONE
                } else {
                    ZERO
                }
            }),
        }
    }
}

/// Generator matrix of a validated algebra.
pub fn generator_matrix(a: &FrobeniusAlgebra, g: Generator) -> GeneratorMap {
    a.generator_map(g)
}

/// The closed genus-`g` surface, evaluated as the bordism
/// `cap ; (comul ; mul)^g ; cup`.
pub fn closed_surface_invariant(a: &FrobeniusAlgebra, genus: usize) -> Result<C64, FrobeniusError> {
    let term = bord::genus_term(genus);
    let m = bord::evaluate(&term, a)?;
    Ok(m[(0, 0)])
}

/// `Σᵢ θᵢ^{1−g}`: the genus-`g` invariant of a semisimple algebra with weights `θ`.
pub fn semisimple_invariant(theta: &[f64], genus: usize) -> f64 {
    let e = 1.0 - genus as f64;
    theta.iter().map(|t| t.powf(e)).sum()
}

/// A semisimple algebra with weights in `[0.2, 3]`, presented in a random
/// complex basis so that its structure constants are dense.
pub fn random_semisimple(k: usize, rng: &mut AuditRng) -> Result<(AlgebraData, Vec<f64>), FrobeniusError> {
    let theta: Vec<f64> = (0..k).map(|_| 0.2 + 2.8 * rng.random::<f64>()).collect();
    let base = AlgebraData::semisimple(&theta)?;
    loop {
        let t = crate::random::random_complex(k, k, rng);
        if t.min_singular_value() > 0.2 {
            return Ok((base.change_basis(&t)?, theta));
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraWire {
    dim: usize,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu: Option<Vec<Vec<Vec<[f64; 2]>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    counit: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<Vec<f64>>,
}

impl Serialize for AlgebraData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let k = self.dim;
        let pair = |z: C64| [z.re, z.im];
        let wire = match &self.theta {
            Some(t) => AlgebraWire {
                dim: k,
                kind: "semisimple".into(),
                mu: None,
                counit: None,
                theta: Some(t.clone()),
            },
            None => AlgebraWire {
                dim: k,
                kind: "structure".into(),
                mu: Some(
                    (0..k)
                        .map(|a| (0..k).map(|b| (0..k).map(|c| pair(self.mu(a, b, c))).collect()).collect())
                        .collect(),
                ),
                counit: Some(self.counit.iter().map(|&z| pair(z)).collect()),
                theta: None,
            },
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = AlgebraWire::deserialize(d)?;
        let c = |[re, im]: [f64; 2]| C64::new(re, im);
        match w.kind.as_str() {
            "semisimple" => {
                let theta = w.theta.ok_or_else(|| D::Error::custom("semisimple algebra requires \"theta\""))?;
                if theta.len() != w.dim {
                    return Err(D::Error::custom(format!("\"dim\" = {} but {} weights", w.dim, theta.len())));
                }
                AlgebraData::semisimple(&theta).map_err(D::Error::custom)
            }
            "structure" => {
                let mu = w.mu.ok_or_else(|| D::Error::custom("structure algebra requires \"mu\""))?;
                let counit = w.counit.ok_or_else(|| D::Error::custom("structure algebra requires \"counit\""))?;
                let k = w.dim;
                let shape_ok = mu.len() == k && mu.iter().all(|r| r.len() == k && r.iter().all(|s| s.len() == k));
                if !shape_ok {
                    return Err(D::Error::custom(format!("\"mu\" must have shape {k}×{k}×{k}")));
                }
                let flat = mu.into_iter().flatten().flatten().map(c).collect();
                AlgebraData::structure(k, flat, counit.into_iter().map(c).collect()).map_err(D::Error::custom)
            }
            other => Err(D::Error::custom(format!("unknown algebra kind {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::rng;

    fn valid(d: AlgebraData) -> FrobeniusAlgebra {
        FrobeniusAlgebra::new(d).unwrap()
    }

    #[test]
    fn ground_field_is_trivial() {
        let a = valid(AlgebraData::ground_field());
        for g in Generator::ALL {
            let m = a.generator(g);
            assert!(m.max_abs_diff(&CMat::identity(1)) < 1e-15, "{g:?}");
        }
        let r = validate_frobenius(a.data()).unwrap();
        assert!(r.checks.iter().all(|c| c.residual == 0.0));
        assert!(r.unitary);
    }

    #[test]
    fn z2_group_algebra() {
        let d = AlgebraData::z2_group_algebra();
        let r = validate_frobenius(&d).unwrap();
        assert!(r.pass(), "{r:#?}");
        assert!(r.unitary);
        assert!(d.pairing().max_abs_diff(&CMat::identity(2)) < 1e-15);
        let a = valid(d);
        assert_eq!(a.unit(), &[ONE, ZERO]);
    }

    #[test]
    fn semisimple_generators() {
        let a = valid(AlgebraData::semisimple(&[1.0, 1.0]).unwrap());
        let m = a.generator(Generator::Mul);
        assert_eq!(m[(0, 0)], ONE);
        assert_eq!(m[(1, 3)], ONE);
        assert_eq!(m[(0, 1)], ZERO);
        let b = valid(AlgebraData::semisimple(&[2.0, 3.0]).unwrap());
        let d = b.generator(Generator::Comul);
        assert!((d[(0, 0)] - C64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((d[(3, 1)] - C64::new(1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert_eq!(d[(1, 0)], ZERO);
    }

    #[test]
    fn degenerate_pairing_rejected() {
        let d = AlgebraData::semisimple(&[1.0, 0.0]).unwrap();
        assert!(matches!(validate_frobenius(&d), Err(FrobeniusError::DegeneratePairing(_))));
    }

    #[test]
    fn non_commutative_data_fails_validation() {
        let mut d = AlgebraData::z2_group_algebra();
        d.mu[(2) * 2 + 1] = C64::new(0.5, 0.0); // g·1 = g/2 while 1·g = g
        let r = validate_frobenius(&d).unwrap();
        assert!(!r.pass());
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.check.as_str()).collect();
        assert!(failed.contains(&"commutativity"));
        assert!(failed.contains(&"right unit"));
        assert!(matches!(FrobeniusAlgebra::new(d), Err(FrobeniusError::Relations(_))));
    }

    #[test]
    fn invariants_match_oracle() {
        for theta in [vec![1.0], vec![2.0, 3.0], vec![0.5, 0.5]] {
            let a = valid(AlgebraData::semisimple(&theta).unwrap());
            for g in 0..=3 {
                let z = closed_surface_invariant(&a, g).unwrap();
                assert!((z.re - semisimple_invariant(&theta, g)).abs() < 1e-9);
                assert!(z.im.abs() < 1e-9);
            }
        }
        let z2 = valid(AlgebraData::z2_group_algebra());
        let expect = [1.0, 2.0, 4.0, 8.0];
        for (g, e) in expect.iter().enumerate() {
            assert!((closed_surface_invariant(&z2, g).unwrap().re - e).abs() < 1e-9);
        }
    }

    #[test]
    fn change_of_basis_preserves_invariants() {
        let mut r = rng(31);
        for k in 1..=4 {
            let (d, theta) = random_semisimple(k, &mut r).unwrap();
            assert!(d.theta.is_none());
            let a = valid(d);
            for g in 0..=3 {
                let z = closed_surface_invariant(&a, g).unwrap();
                let want = semisimple_invariant(&theta, g);
                assert!((z - C64::new(want, 0.0)).norm() <= 1e-9 * (1.0 + want.abs()), "k={k} g={g}: {z} vs {want}");
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        for d in [AlgebraData::z2_group_algebra(), AlgebraData::semisimple(&[2.0, 3.0]).unwrap()] {
            let s = serde_json::to_string(&d).unwrap();
            assert_eq!(serde_json::from_str::<AlgebraData>(&s).unwrap(), d);
        }
        let bad = r#"{"dim":2,"kind":"structure","mu":[[[[1,0]]]],"counit":[[1,0],[0,0]]}"#;
        assert!(serde_json::from_str::<AlgebraData>(bad).is_err());
    }
}

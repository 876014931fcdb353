//! Hermitian matrices as a real Hilbert space.
//!
//! `H(V)` for a carrier of dimension `n` is an `n²`-dimensional real vector space
//! with inner product `<f, g> = tr(fg)`. [`hermitian_basis`] fixes an orthonormal
//! basis so that every `HermMat` has a reproducible real coordinate vector.
//!
//! Every `HermMat` is stored exactly Hermitian: constructors validate the input
//! and then replace it by `(f + f†)/2`, and arithmetic re-symmetrizes.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{CMat, C64, ONE, ZERO};
use crate::spectral::{spectral, Spectrum};

/// Largest supported carrier dimension.
pub const MAX_CARRIER_DIM: usize = 64;

/// Tolerance used when validating Hermiticity of external input.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HermError {
    #[error("carrier dimension must be positive")]
    ZeroDimension,
    #[error("carrier dimension {0} exceeds the supported maximum of {MAX_CARRIER_DIM}")]
    TooLarge(usize),
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("matrix is not Hermitian: |f[{i}][{j}] - conj(f[{j}][{i}])| = {deviation:e}")]
    NotHermitian { i: usize, j: usize, deviation: f64 },
    #[error("non-finite entry at [{0}][{1}]")]
    NonFinite(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension {n} does not factor as {factors:?}")]
    Factorization { n: usize, factors: Vec<usize> },
}

/// Which tensor factor an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    First,
    Second,
}

#[derive(Clone, PartialEq)]
pub struct HermMat {
    n: usize,
    data: Vec<C64>,
}

fn check_dim(n: usize) -> Result<(), HermError> {
    if n == 0 {
        Err(HermError::ZeroDimension)
    } else if n > MAX_CARRIER_DIM {
        Err(HermError::TooLarge(n))
    } else {
        Ok(())
    }
}

impl HermMat {
    /// Validates Hermiticity to [`HERMITIAN_INPUT_TOL`] and symmetrizes.
    pub fn new(n: usize, entries: Vec<C64>) -> Result<Self, HermError> {
        Self::with_tolerance(n, entries, HERMITIAN_INPUT_TOL)
    }

    pub fn with_tolerance(n: usize, entries: Vec<C64>, tol: f64) -> Result<Self, HermError> {
        check_dim(n)?;
        if entries.len() != n * n {
            return Err(HermError::Shape {
                expected: n * n,
                got: entries.len(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let z = entries[i * n + j];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(HermError::NonFinite(i, j));
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let deviation = (entries[i * n + j] - entries[j * n + i].conj()).norm();
                if deviation > tol {
                    return Err(HermError::NotHermitian { i, j, deviation });
                }
            }
        }
        Ok(Self::symmetrize_raw(n, entries))
    }

    /// Real symmetric matrix from row-major data.
    pub fn from_real(n: usize, entries: &[f64]) -> Result<Self, HermError> {
        Self::new(n, entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// `(m + m†)/2` for an arbitrary square matrix, without validation.
    /// Panics if `m` is not square or exceeds [`MAX_CARRIER_DIM`].
    pub fn from_cmat_symmetrized(m: &CMat) -> Self {
        assert_eq!(m.rows(), m.cols(), "HermMat: matrix must be square");
        check_dim(m.rows()).expect("HermMat: unsupported dimension");
        Self::symmetrize_raw(m.rows(), m.as_slice().to_vec())
    }

    /// Validated conversion from a square complex matrix.
    pub fn try_from_cmat(m: &CMat, tol: f64) -> Result<Self, HermError> {
        if m.rows() != m.cols() {
            return Err(HermError::DimensionMismatch(m.rows(), m.cols()));
        }
        Self::with_tolerance(m.rows(), m.as_slice().to_vec(), tol)
    }

    fn symmetrize_raw(n: usize, mut data: Vec<C64>) -> Self {
        for i in 0..n {
            data[i * n + i] = C64::new(data[i * n + i].re, 0.0);
            for j in (i + 1)..n {
                let upper = (data[i * n + j] + data[j * n + i].conj()) * 0.5;
                data[i * n + j] = upper;
                data[j * n + i] = upper.conj();
            }
        }
        HermMat { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        check_dim(n).expect("HermMat::zeros: unsupported dimension");
        HermMat {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * n + i] = C64::new(v, 0.0);
        }
        m
    }

    /// 1×1 matrix holding a real scalar.
    pub fn scalar(x: f64) -> Self {
        Self::diag(&[x])
    }

    /// Rank-one projector `v v†` (the vector is used as given, not normalized).
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        check_dim(n).expect("HermMat::outer: unsupported dimension");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(v[i] * v[j].conj());
            }
        }
        Self::symmetrize_raw(n, data)
    }

    /// Normalized projector onto `span{v}`.
    pub fn projector(v: &[C64]) -> Self {
        let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        assert!(norm2 > 0.0, "HermMat::projector: zero vector");
        Self::outer(v).scale(1.0 / norm2)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn to_cmat(&self) -> CMat {
        CMat::from_vec(self.n, self.n, self.data.clone())
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.data[i * self.n + i].re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &HermMat) -> f64 {
        assert_eq!(self.n, other.n, "HermMat::max_abs_diff: dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == ZERO)
    }

    pub fn scale(&self, s: f64) -> Self {
        HermMat {
            n: self.n,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &HermMat) -> Result<Self, HermError> {
        self.same_dim(other)?;
        Ok(HermMat {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &HermMat) -> Result<Self, HermError> {
        self.same_dim(other)?;
        Ok(HermMat {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// `a·self + b·other`.
    pub fn lincomb(&self, a: f64, other: &HermMat, b: f64) -> Result<Self, HermError> {
        self.same_dim(other)?;
        Ok(HermMat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| x * a + y * b)
                .collect(),
        })
    }

    fn same_dim(&self, other: &HermMat) -> Result<(), HermError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(HermError::DimensionMismatch(self.n, other.n))
        }
    }

    /// Transpose in the computational basis (equivalently, entrywise conjugate).
    pub fn transpose(&self) -> Self {
        HermMat {
            n: self.n,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// `Z self Z†` for an `m×n` matrix `Z`.
    pub fn conjugate_by(&self, z: &CMat) -> Result<Self, HermError> {
        if z.cols() != self.n {
            return Err(HermError::DimensionMismatch(z.cols(), self.n));
        }
        check_dim(z.rows())?;
        let out = z.matmul(&self.to_cmat()).matmul(&z.adjoint());
        Ok(Self::from_cmat_symmetrized(&out))
    }

    pub fn spectral(&self) -> Spectrum {
        spectral(self)
    }

    /// Coordinates in the basis returned by [`hermitian_basis`].
    pub fn coords(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            out.push(self.data[i * n + i].re);
        }
        let s2 = std::f64::consts::SQRT_2;
        for i in 0..n {
            for j in (i + 1)..n {
                out.push(s2 * self.data[i * n + j].re);
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                out.push(s2 * self.data[i * n + j].im);
            }
        }
        out
    }

    /// Inverse of [`HermMat::coords`].
    pub fn from_coords(n: usize, coords: &[f64]) -> Result<Self, HermError> {
        check_dim(n)?;
        if coords.len() != n * n {
            return Err(HermError::Shape {
                expected: n * n,
                got: coords.len(),
            });
        }
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            data[i * n + i] = C64::new(coords[i], 0.0);
        }
        let pairs = n * (n - 1) / 2;
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                let z = C64::new(coords[n + k] * inv, coords[n + pairs + k] * inv);
                data[i * n + j] = z;
                data[j * n + i] = z.conj();
                k += 1;
            }
        }
        Ok(HermMat { n, data })
    }
}

impl fmt::Debug for HermMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "HermMat n={} [", self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Orthonormal basis of `H(V)`: diagonal units, then `(E_ij + E_ji)/√2`, then
/// `i(E_ij - E_ji)/√2`, pairs `i < j` in row-major order.
pub fn hermitian_basis(n: usize) -> Result<Vec<HermMat>, HermError> {
    check_dim(n)?;
    let mut basis = Vec::with_capacity(n * n);
    for k in 0..n * n {
        let mut c = vec![0.0; n * n];
        c[k] = 1.0;
        basis.push(HermMat::from_coords(n, &c)?);
    }
    Ok(basis)
}

/// `tr(fg)`.
pub fn inner(f: &HermMat, g: &HermMat) -> Result<f64, HermError> {
    f.same_dim(g)?;
    // tr(fg) = Σ f_ij g_ji = Σ f_ij conj(g_ij) for Hermitian g.
    let mut re = 0.0;
    let mut im = 0.0;
    for (a, b) in f.data.iter().zip(&g.data) {
        re += a.re * b.re + a.im * b.im;
        im += a.im * b.re - a.re * b.im;
    }
    debug_assert!(im.abs() <= 1e-12 * (1.0 + re.abs()), "tr(fg) has imaginary part {im}");
    Ok(re)
}

/// `f ⊗ g` with the first factor outermost.
pub fn kron(f: &HermMat, g: &HermMat) -> Result<HermMat, HermError> {
    let n = f.n * g.n;
    check_dim(n)?;
    let k = f.to_cmat().kron(&g.to_cmat());
    Ok(HermMat::from_cmat_symmetrized(&k))
}

/// Partial trace over one factor of a `d1·d2` carrier.
pub fn partial_trace(f: &HermMat, dims: (usize, usize), which: Factor) -> Result<HermMat, HermError> {
    let (d1, d2) = dims;
    if d1 == 0 || d2 == 0 || d1 * d2 != f.n {
        return Err(HermError::Factorization {
            n: f.n,
            factors: vec![d1, d2],
        });
    }
    let idx = |a: usize, b: usize| a * d2 + b;
    let out = match which {
        Factor::Second => d1,
        Factor::First => d2,
    };
    let mut data = vec![ZERO; out * out];
    for i in 0..out {
        for j in 0..out {
            let mut s = ZERO;
            match which {
                Factor::Second => {
                    for k in 0..d2 {
                        s += f.data[idx(i, k) * f.n + idx(j, k)];
                    }
                }
                Factor::First => {
                    for k in 0..d1 {
                        s += f.data[idx(k, i) * f.n + idx(k, j)];
                    }
                }
            }
            data[i * out + j] = s;
        }
    }
    Ok(HermMat::symmetrize_raw(out, data))
}

/// Reorders tensor factors: the output factor at position `p` is input factor `order[p]`.
/// Equivalent to conjugation by the corresponding permutation unitary.
pub fn permute_factors(f: &HermMat, dims: &[usize], order: &[usize]) -> Result<HermMat, HermError> {
    let total: usize = dims.iter().product();
    if dims.contains(&0) || total != f.n {
        return Err(HermError::Factorization {
            n: f.n,
            factors: dims.to_vec(),
        });
    }
    let mut seen = vec![false; dims.len()];
    if order.len() != dims.len()
        || order.iter().any(|&o| o >= dims.len() || std::mem::replace(&mut seen[o], true))
    {
        return Err(HermError::Factorization {
            n: f.n,
            factors: order.to_vec(),
        });
    }
    let perm = factor_permutation(dims, order);
    let n = f.n;
    let mut data = vec![ZERO; n * n];
    for x in 0..n {
        for y in 0..n {
            data[perm[x] * n + perm[y]] = f.data[x * n + y];
        }
    }
    Ok(HermMat { n, data })
}

/// Maps each input basis index to its position after reordering the factors.
pub(crate) fn factor_permutation(dims: &[usize], order: &[usize]) -> Vec<usize> {
    let total: usize = dims.iter().product();
    let out_dims: Vec<usize> = order.iter().map(|&o| dims[o]).collect();
    let mut perm = vec![0; total];
    let mut digits = vec![0; dims.len()];
    for (x, slot) in perm.iter_mut().enumerate() {
        let mut rem = x;
        for k in (0..dims.len()).rev() {
            digits[k] = rem % dims[k];
            rem /= dims[k];
        }
        let mut y = 0;
        for (p, &o) in order.iter().enumerate() {
            y = y * out_dims[p] + digits[o];
        }
        *slot = y;
    }
    perm
}

/// `(A₁⊗B₁)⊗(A₂⊗B₂) → (A₁⊗A₂)⊗(B₁⊗B₂)`.
pub fn interleave_permute(f: &HermMat, dims: (usize, usize, usize, usize)) -> Result<HermMat, HermError> {
    let (a1, b1, a2, b2) = dims;
    permute_factors(f, &[a1, b1, a2, b2], &[0, 2, 1, 3])
}

/// Inverse of [`interleave_permute`]: `(A₁⊗A₂)⊗(B₁⊗B₂) → (A₁⊗B₁)⊗(A₂⊗B₂)`.
pub fn deinterleave_permute(f: &HermMat, dims: (usize, usize, usize, usize)) -> Result<HermMat, HermError> {
    let (a1, b1, a2, b2) = dims;
    permute_factors(f, &[a1, a2, b1, b2], &[0, 2, 1, 3])
}

/// Partial transpose of the second factor of a `d1·d2` carrier.
pub fn partial_transpose(f: &HermMat, dims: (usize, usize)) -> Result<HermMat, HermError> {
    let (d1, d2) = dims;
    if d1 * d2 != f.n {
        return Err(HermError::Factorization {
            n: f.n,
            factors: vec![d1, d2],
        });
    }
    let n = f.n;
    let mut data = vec![ZERO; n * n];
    for i1 in 0..d1 {
        for i2 in 0..d2 {
            for j1 in 0..d1 {
                for j2 in 0..d2 {
                    data[(i1 * d2 + j2) * n + (j1 * d2 + i2)] = f.data[(i1 * d2 + i2) * n + (j1 * d2 + j2)];
                }
            }
        }
    }
    Ok(HermMat { n, data })
}

/// Partial transpose of the factors flagged in `mask` on a multi-factor carrier.
pub fn partial_transpose_factors(f: &HermMat, dims: &[usize], mask: &[bool]) -> Result<HermMat, HermError> {
    if dims.iter().product::<usize>() != f.n || dims.len() != mask.len() {
        return Err(HermError::Factorization {
            n: f.n,
            factors: dims.to_vec(),
        });
    }
    let n = f.n;
    let digits = |mut x: usize| {
        let mut d = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            d[k] = x % dims[k];
            x /= dims[k];
        }
        d
    };
    let index = |d: &[usize]| d.iter().zip(dims).fold(0, |acc, (x, m)| acc * m + x);
    let mut data = vec![ZERO; n * n];
    for r in 0..n {
        for c in 0..n {
            let (mut dr, mut dc) = (digits(r), digits(c));
            for k in 0..dims.len() {
                if mask[k] {
                    std::mem::swap(&mut dr[k], &mut dc[k]);
                }
            }
            data[index(&dr) * n + index(&dc)] = f.data[r * n + c];
        }
    }
    Ok(HermMat { n, data })
}

/// Pairs factor `i` of `f` with `s`, leaving an operator on the remaining
/// factors: the `h` with `tr(h·x) = tr(f·(x with s inserted at i))`.
pub fn contract_factor(f: &HermMat, dims: &[usize], i: usize, s: &HermMat) -> Result<HermMat, HermError> {
    if dims.iter().product::<usize>() != f.n || i >= dims.len() {
        return Err(HermError::Factorization {
            n: f.n,
            factors: dims.to_vec(),
        });
    }
    let ni = dims[i];
    if s.n != ni {
        return Err(HermError::DimensionMismatch(ni, s.n));
    }
    let stride: usize = dims[i + 1..].iter().product();
    let m = f.n / ni;
    let n = f.n;
    let mut out = CMat::zeros(m, m);
    for r in 0..m {
        let (rh, rl) = (r / stride, r % stride);
        for c in 0..m {
            let (ch, cl) = (c / stride, c % stride);
            let mut acc = ZERO;
            for a in 0..ni {
                let row = (rh * ni + a) * stride + rl;
                for b in 0..ni {
                    let col = (ch * ni + b) * stride + cl;
                    acc += f.data[row * n + col] * s.data[b * ni + a];
                }
            }
            out[(r, c)] = acc;
        }
    }
    Ok(HermMat::from_cmat_symmetrized(&out))
}

/// The swap operator on `C^d ⊗ C^d`.
pub fn swap_operator(d: usize) -> Result<HermMat, HermError> {
    let n = d * d;
    check_dim(n)?;
    let mut data = vec![ZERO; n * n];
    for a in 0..d {
        for b in 0..d {
            data[(a * d + b) * n + (b * d + a)] = ONE;
        }
    }
    Ok(HermMat { n, data })
}

#[derive(Serialize, Deserialize)]
struct HermMatWire {
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for HermMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HermMatWire {
            n: self.n,
            entries: (0..self.n)
                .map(|i| (0..self.n).map(|j| [self.get(i, j).re, self.get(i, j).im]).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HermMat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = HermMatWire::deserialize(d)?;
        if wire.entries.len() != wire.n || wire.entries.iter().any(|r| r.len() != wire.n) {
            return Err(serde::de::Error::custom(format!(
                "entries must be a {0}x{0} array of [re, im] pairs",
                wire.n
            )));
        }
        let flat = wire
            .entries
            .iter()
            .flatten()
            .map(|p| C64::new(p[0], p[1]))
            .collect();
        HermMat::new(wire.n, flat).map_err(serde::de::Error::custom)
    }
}

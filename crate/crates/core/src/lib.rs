//! Quantum coherent spaces, Choi morphisms and Euler-rescaled 2d TQFTs.
//!
//! The crate is organised bottom-up: dense Hermitian linear algebra ([`herm`],
//! [`spectral`]), an exact-arithmetic-free simplex solver ([`lp`]), polarity and
//! membership oracles ([`qcs`]), morphisms as Choi matrices ([`choi`]),
//! commutative Frobenius algebras ([`frobenius`]), a typed bordism term
//! language ([`bord`]) and the functor into coherent spaces ([`ms`]).

pub mod bord;
pub mod choi;
pub mod frobenius;
pub mod herm;
pub mod lp;
pub mod matrix;
pub mod ms;
pub mod qcs;
pub mod random;
pub mod report;
pub mod spectral;

pub use bord::{BordError, Generator, Term};
pub use choi::{ChoiError, ChoiMorphism};
pub use frobenius::{AlgebraData, FrobeniusAlgebra, FrobeniusError};
pub use herm::{HermError, HermMat};
pub use lp::{solve_lp, LpError, LpOutcome, LpProblem};
pub use matrix::{CMat, C64};
pub use ms::{MsError, MsTqft, ObjectPolicy};
pub use qcs::{Answer, Canonical, MembershipVerdict, QcsDesc, QcsError, Witness};
pub use report::CheckReport;

/// Any error raised by the crate.
#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Herm(#[from] HermError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Qcs(#[from] QcsError),
    #[error(transparent)]
    Choi(#[from] ChoiError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error(transparent)]
    Bord(#[from] BordError),
    #[error(transparent)]
    Ms(#[from] MsError),
}

//! Exact arithmetic for Lind-Mahler measures of integer polynomials over
//! finite abelian groups.
//!
//! For a finite abelian group `G = Z_n1 x ... x Z_nk` and a polynomial `F`
//! with integer coefficients, the Lind-Mahler measure `M_G(F)` is the integer
//! obtained by multiplying the values of `F` over all tuples of roots of
//! unity whose orders divide the `n_i`. This crate computes `M_G(F)` by
//! several independent exact methods (group determinant, cyclotomic
//! resultants, certified ball arithmetic), exposes the norm factorization
//! that arises when `G` is a p-group, checks the congruences those norms
//! satisfy, and exhaustively searches bounded coefficient boxes for the
//! minimal measure above 1 — the Lind-Lehmer constant of `G`, within the box.
//!
//! The `examples/` directory holds one runnable walkthrough per capability;
//! the `lindmahler` binary exposes the same operations as JSON-emitting
//! subcommands (`measure`, `lambda`, `congruence`, `resultant-table`,
//! `verify`, `witness`).

pub mod cyclo;
pub mod groups;
pub mod linalg;
pub mod poly;

pub mod measure;
pub mod congruence;
pub mod search;
pub mod verify;
pub mod cli;

pub use groups::{make_group, CharacterIndex, GroupSpec, PGroupStructure};
pub use poly::{parse_polynomial, IntPolynomial};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("not a p-group: {0}")]
    NotPGroup(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("inverse transform is not integral: {0}")]
    NonIntegral(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

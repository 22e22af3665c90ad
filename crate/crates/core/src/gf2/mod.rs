//! Exact linear algebra over GF(2).
//!
//! All row operations are XORs; there is no scaling step because the only
//! nonzero scalar is 1. These routines are the classical reference that
//! every reversible elimination circuit is checked against.

mod bits;
mod elim;
mod matrix;

pub use bits::BitVector;
pub use elim::{
    gaussian_eliminate, general_solution, is_row_echelon, is_rref, nullspace_basis, pivot_xor_echelon, rank,
    rank_of_rows, row_echelon, rref, GeneralSolution, Rref,
};
pub use matrix::BitMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Gf2Error {
    #[error("coefficient matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
}

use thiserror::Error;

use crate::parameter_array::Condition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Also raised when a prime-field computation hits a zero residue.
    #[error("division by zero (field degeneracy)")]
    DivisionByZero,
    #[error("invalid field modulus {0}: {1}")]
    InvalidModulus(u64, &'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("eigenvalues are not mutually distinct (repeat at index {0})")]
    DuplicateEigenvalue(usize),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("polynomial basis is not degree-graded at position {0}")]
    NotGraded(usize),
    #[error("{what} has length {found}, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("parameter array is not valid: {0} fails")]
    InvalidArray(Condition),
    #[error("split sequence seed must be nonzero")]
    ZeroSeed,
    #[error("trace denominator vanishes at index {0}")]
    DegenerateTrace(usize),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("internal identity failure: {0}")]
    Internal(String),
}

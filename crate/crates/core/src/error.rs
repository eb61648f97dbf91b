use thiserror::Error;

use crate::densemat::EigenResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix data has {got} entries, expected {rows}x{cols}")]
    ShapeMismatch { rows: usize, cols: usize, got: usize },

    #[error("row {} has {got} entries, expected {expected}", .row + 1)]
    RaggedRow { row: usize, expected: usize, got: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric: |s[{i}][{j}] - s[{j}][{i}]| = {diff:e}")]
    NotSymmetric { i: usize, j: usize, diff: f64 },

    #[error("Jacobi iteration did not converge after {} sweeps (off-diagonal norm {:e})", .0.sweeps_used, .0.off_diag_norm)]
    NoConvergence(Box<EigenResult>),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("entry at row {}, column {} is not finite", .row + 1, .col + 1)]
    NonFinite { row: usize, col: usize },

    #[error("entry at row {}, column {} is negative ({value})", .row + 1, .col + 1)]
    NegativeEntry { row: usize, col: usize, value: f64 },

    #[error("a confusion matrix needs at least 2 classes, got {0}")]
    TooFewClasses(usize),

    #[error("confusion matrix has no positive entry")]
    EmptyMatrix,

    #[error("label lists differ in length ({true_len} true vs {pred_len} predicted)")]
    LengthMismatch { true_len: usize, pred_len: usize },

    #[error("label {label} at position {position} is outside [0, {n})")]
    LabelOutOfRange { position: usize, label: usize, n: usize },

    #[error("membership row {row} has {got} values, expected {expected}")]
    MembershipArity { row: usize, expected: usize, got: usize },

    #[error("membership row {row} has no positive value")]
    ZeroMembershipRow { row: usize },

    #[error("membership row {row} contains a negative or non-finite value")]
    InvalidMembership { row: usize },

    #[error("class {} has an empty column (no observations); apply smooth() first", .0 + 1)]
    EmptyColumn(usize),

    #[error("diagonal entry {} of B is zero; apply smooth() first", .0 + 1)]
    ZeroDiagonal(usize),

    #[error("expected a 2x2 matrix, got {rows}x{cols}")]
    NotBinary { rows: usize, cols: usize },

    #[error("entry at row {}, column {} is not an integer; pair counting needs counts (use one-vs-rest instead)", .row + 1, .col + 1)]
    NonInteger { row: usize, col: usize },

    #[error("pair enumeration over {0} observations exceeds the oracle limit of 10000")]
    TooManyObservations(u64),

    #[error("pair counting needs at least 2 observations")]
    TooFewObservations,

    #[error("class index {index} out of range for {n} classes")]
    ClassOutOfRange { index: usize, n: usize },

    #[error("p22 must lie in (0, 1], got {0}")]
    InvalidProbability(f64),

    #[error("{measure} is not supported for {n} classes")]
    Unsupported { measure: &'static str, n: usize },
}

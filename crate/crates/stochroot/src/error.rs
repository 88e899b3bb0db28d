//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("row {row} sums to {sum} (tolerance {tol})")]
    RowSum { row: usize, sum: f64, tol: f64 },

    #[error("entry ({row}, {col}) = {value} violates positivity requirement")]
    Negative { row: usize, col: usize, value: f64 },

    #[error("division by zero entry at ({row}, {col})")]
    ZeroDivisor { row: usize, col: usize },

    #[error("probability vector invalid: {0}")]
    InvalidProbabilityVector(String),

    #[error("stationary vector has entry <= 0 (chain likely reducible)")]
    NonPositive,

    #[error("{what} did not converge after {iterations} iterations (residual {residual})")]
    NotConverged {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("input matrix has a nonpositive entry at ({row}, {col})")]
    NonPositiveInput { row: usize, col: usize },

    #[error("tangent vector based at a different point")]
    BaseMismatch,

    #[error("point does not satisfy the {manifold} manifold equations (residual {residual})")]
    OffManifold { manifold: &'static str, residual: f64 },

    #[error("linear solver failed: {0}")]
    SolverFailure(String),

    #[error("initial residual lies entirely in the null space of the projection system")]
    BreakdownNullStart,

    #[error("factorization is singular at pivot {pivot}")]
    SingularFactorization { pivot: usize },

    #[error("incomplete Cholesky pivot failure at row {row} (pivot {pivot})")]
    PivotFailure { row: usize, pivot: f64 },

    #[error("retraction step too large: entry ({row}, {col}) would become {value}")]
    StepTooLarge { row: usize, col: usize, value: f64 },

    #[error("retraction exponent overflow: {value} exceeds 700; shrink the step")]
    Overflow { value: f64 },

    #[error("line search failed to produce sufficient decrease")]
    LineSearchFailure,

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

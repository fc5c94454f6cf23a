use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix order {0} is too small (need n >= 2)")]
    OrderTooSmall(usize),

    #[error("matrix is not square: {rows} rows, {cols} columns")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: expected order {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("half-vector of length {len} does not match order {n} (expected {expected})")]
    LengthMismatch { len: usize, n: usize, expected: usize },

    #[error("entry ({i}, {j}) = {value} is not strictly positive and finite")]
    NonPositiveEntry { i: usize, j: usize, value: f64 },

    #[error("weight {index} = {value} is not strictly positive and finite")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("entry ({i}, {j}) = {value} is not finite")]
    NonFinite { i: usize, j: usize, value: f64 },

    #[error("matrix is not reciprocal: |a[{i}][{j}] * a[{j}][{i}] - 1| = {deviation:e}")]
    NotReciprocal { i: usize, j: usize, deviation: f64 },

    #[error("matrix is not skew-symmetric: |b[{i}][{j}] + b[{j}][{i}]| = {deviation:e}")]
    NotSkew { i: usize, j: usize, deviation: f64 },

    #[error("matrix is not symmetric: |w[{i}][{j}] - w[{j}][{i}]| = {deviation:e}")]
    NotSymmetric { i: usize, j: usize, deviation: f64 },

    #[error("weight matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("matrix is not additively consistent (max deviation {deviation:e})")]
    NotConsistent { deviation: f64 },

    #[error("element {index} is linearly dependent on its predecessors")]
    DegenerateElement { index: usize },

    #[error("Gram matrix is numerically singular")]
    SingularGram,

    #[error("input matrix is zero")]
    ZeroMatrix,

    #[error("inner product of kind {kind} cannot be evaluated on {operand}")]
    ArityMismatch { kind: &'static str, operand: &'static str },

    #[error("basis does not fit the request: {0}")]
    BasisMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

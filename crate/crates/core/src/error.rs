use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

/// Every way an operation in this crate can refuse its input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows but a row of length {cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("matrix is not Hermitian: max |m_jk - conj(m_kj)| = {deviation:e} exceeds 1e-10")]
    NotHermitian { deviation: f64 },
    #[error("trace is not one: |Tr - 1| = {deviation:e} (trace = {trace})")]
    TraceNotOne { trace: f64, deviation: f64 },
    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPsd { min_eigenvalue: f64 },
    #[error("Bloch vector norm {norm} exceeds 1")]
    BlochNormExceeded { norm: f64 },
    #[error("operation needs dimension {expected}, got {actual}")]
    WrongDimension { expected: usize, actual: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("mixedness {0} outside [0, 1)")]
    InvalidMixedness(f64),
    #[error("mixedness {mixedness} is below the feasibility threshold {threshold:.6} for d = {dim}")]
    BelowThreshold { dim: usize, mixedness: f64, threshold: f64 },
    #[error("parameter p = {0} outside its allowed range")]
    InvalidP(f64),
    #[error("qutrit MIMS index {0} outside 1..=8")]
    InvalidVariantIndex(usize),
    #[error("invalid sign mask: {0}")]
    InvalidMask(&'static str),
    #[error("Kraus operators are not complete: max |sum K^dag K - I| = {residual:e}")]
    IncompleteKraus { residual: f64 },
    #[error("unknown channel kind")]
    UnknownKind,
    #[error("grid value {value} outside [{lo}, {hi}]")]
    GridOutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

use thiserror::Error;

use crate::tensor::Triple;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected n = {expected}, got n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index triple ({}, {}, {}) lies outside [{n}]^3", .triple.0, .triple.1, .triple.2)]
    IndexOutOfRange { triple: Triple, n: usize },

    #[error("zero coefficient supplied for triple ({}, {}, {})", .0.0, .0.1, .0.2)]
    ZeroCoefficient(Triple),

    #[error("coefficients do not match the support: {0}")]
    CoefficientMismatch(String),

    #[error("format must be at least 1")]
    ZeroFormat,

    #[error("not a permutation of 1..{n}: {images:?}")]
    InvalidPermutation { n: usize, images: Vec<usize> },

    #[error("cocharacter violates lambda_i + mu_i + nu_i = 0 at i = {0}")]
    NotACocharacter(usize),

    #[error("malformed rational {0:?}")]
    BadRational(String),

    #[error("monomial must have positive degree")]
    EmptyMonomial,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("n = {n} exceeds the enumeration cap {cap}; rerun with best effort enabled")]
    CapExceeded { n: usize, cap: usize },

    #[error("{0} out of range")]
    OutOfRange(String),

    #[error("json: {0}")]
    Json(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

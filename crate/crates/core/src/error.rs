use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("scale guard: {0}")]
    ScaleGuard(String),
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("bad minor index list: {0}")]
    BadIndexList(String),
    #[error("certificate rejected at level {level}: minor {label} vanishes")]
    CertificateRejected { level: usize, label: String },
    #[error("input is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

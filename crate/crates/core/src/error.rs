use thiserror::Error;

/// Errors raised by the exact-arithmetic and representation layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no square class")]
    ZeroSquareClass,
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("cyclotomic conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("form is degenerate")]
    Degenerate,
    #[error("subspace is not isotropic")]
    NotIsotropic,
    #[error("vector is isotropic")]
    IsotropicVector,
    #[error("decomposition is not orthogonal")]
    NotOrthogonal,
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("subspace is not invariant: {0}")]
    NotInvariant(String),
    #[error("outside stable range: t = {t} > n = {n}")]
    OutsideStableRange { t: usize, n: usize },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("leading coefficient is not invertible")]
    NonInvertibleLeading,
    #[error("bad constant term: {0}")]
    BadConstantTerm(&'static str),
    #[error("bad valuation: expected {expected}, found {found}")]
    BadValuation { expected: i64, found: i64 },
    #[error("coefficient of order {requested} lies beyond precision {precision}")]
    BeyondPrecision { requested: i64, precision: i64 },
    #[error("series variables differ: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("exact series needs a precision for this operation")]
    NeedsPrecision,
    #[error("rational reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("rationality assertion failed: {0}")]
    Rationality(String),
    #[error("integrand factor has no constant term: {0}")]
    IntegrandPole(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("({g}, {n}) lies outside the computed table")]
    OutOfTableRange { g: i64, n: i64 },
    #[error("tree size {n} exceeds the bound {bound}")]
    SizeBound { n: usize, bound: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

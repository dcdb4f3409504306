use thiserror::Error;

/// Errors shared across the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NonPrimeP(u64),
    #[error("modulus is reducible over Z/{0}")]
    ReducibleModulus(u32),
    #[error("modulus degree {got} does not match extension degree {want}")]
    DegreeMismatch { got: usize, want: usize },
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("zero modulus")]
    ZeroModulus,
    #[error("invalid enumeration kind: {0}")]
    InvalidKind(String),
    #[error("coefficient of t^{0} lies outside the certified window")]
    InsufficientPrecision(i64),
    #[error("constancy scale not certified: {0}")]
    UncertifiedScale(String),
    #[error("budget exceeded: {0}")]
    OverBudget(String),
    #[error("operation requires characteristic > 3")]
    CharThreeRejected,
    #[error("prime divides every coordinate of c")]
    PrimeDividesC,
    #[error("c = 0 not allowed")]
    ZeroC,
    #[error("bad reduction: {0}")]
    BadReduction(String),
    #[error("integrality failure (likely a counting bug): {0}")]
    IntegralityFailure(String),
    #[error("character sum is not a rational integer: {0}")]
    RealnessFailure(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("manifest schema error: {0}")]
    SchemaError(String),
    #[error("unknown experiment: {0}")]
    UnknownExperiment(String),
    #[error("parse error: {0}")]
    ParseError(String),
}

pub type Result<T> = std::result::Result<T, Error>;

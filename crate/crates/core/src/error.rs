use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("contacts violate comparability (minimum of an incomparable set)")]
    Incomparable,
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("polynomial is not monic in Y")]
    NotMonic,
    #[error("polynomial is not a Weierstrass polynomial: {0}")]
    NotWeierstrass(String),
    #[error("resultant of two polynomials constant in Y")]
    ConstantResultant,
    #[error("zero series has no Newton polytope")]
    ZeroSeries,
    #[error("lattice does not contain the ambient reference lattice")]
    NotContainingZd,
    #[error("lattice inclusion fails: {0}")]
    NotSublattice(String),
    #[error("roots are not quasi-ordinary-compatible: {0}")]
    NotQuasiOrdinaryRoots(String),
    #[error("duplicate roots: the discriminant vanishes")]
    DuplicateRoots,
    #[error("series is not Y-regular")]
    NotRegular,
    #[error("degree {degree} exceeds the configured limit {limit}")]
    DegreeLimit { degree: u32, limit: u32 },
    #[error("invalid exponent sequence: ({condition}) violated at i={at}")]
    InvalidSequence { condition: &'static str, at: usize },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

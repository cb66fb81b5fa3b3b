use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("no primitive {n}-th root of unity in {field}")]
    NoPrimitiveRoot { n: usize, field: String },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("characteristic {characteristic} divides n = {n}")]
    CharacteristicDividesN { characteristic: u64, n: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("element is not invertible (the modulus is reducible)")]
    NotInvertible,
    #[error("field towers are limited to three levels")]
    TowerTooTall,
    #[error("modulus is reducible over {0}")]
    ReducibleModulus(String),
    #[error("sigma(alpha) is not a root of the modulus")]
    NotAnAutomorphism,
    #[error("automorphism has order {order} instead of {n}")]
    AutomorphismOrderMismatch { order: String, n: usize },
    #[error("the zeta-eigenspace of sigma is empty")]
    EmptyEigenspace,
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation at {path}: {message}")]
    SchemaViolation { path: String, message: String },
}

impl Error {
    /// Stable identifier used in JSON reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroDenominator => "ZeroDenominator",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotPrime(_) => "NotPrime",
            Error::NoPrimitiveRoot { .. } => "NoPrimitiveRoot",
            Error::NotMonic => "NotMonic",
            Error::FieldMismatch => "FieldMismatch",
            Error::CharacteristicDividesN { .. } => "CharDividesN",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotInvertible => "NotInvertible",
            Error::TowerTooTall => "TowerTooTall",
            Error::ReducibleModulus(_) => "ReducibleModulus",
            Error::NotAnAutomorphism => "NotAnAutomorphism",
            Error::AutomorphismOrderMismatch { .. } => "AutomorphismOrderMismatch",
            Error::EmptyEigenspace => "EmptyEigenspace",
            Error::MalformedCertificate(_) => "MalformedCertificate",
            Error::Parse { .. } => "ParseError",
            Error::SchemaViolation { .. } => "SchemaViolation",
        }
    }

    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::SchemaViolation {
            path: path.into(),
            message: message.into(),
        }
    }
}

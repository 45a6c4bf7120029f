use thiserror::Error;

/// Errors produced by the field, matrix, code and scheme layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in GF(2^m)")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("key generation failed: {0}")]
    GenerationFailure(String),

    #[error("syndrome is not decodable")]
    DecodingFailure,

    #[error("wrong weight: expected {expected}, found {found}")]
    Weight { expected: usize, found: usize },

    #[error("value out of range: {0}")]
    Range(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("invalid seed-row policy: {0}")]
    Policy(String),

    #[error("known-answer record {index} does not match: {detail}")]
    KatMismatch { index: usize, detail: String },
}

impl Error {
    /// Short machine-readable name, as printed by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Singular => "Singular",
            Error::Parameter(_) => "ParameterError",
            Error::GenerationFailure(_) => "GenerationFailure",
            Error::DecodingFailure => "DecodingFailure",
            Error::Weight { .. } => "WeightError",
            Error::Range(_) => "RangeError",
            Error::Format(_) => "FormatError",
            Error::Policy(_) => "PolicyError",
            Error::KatMismatch { .. } => "KatMismatch",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires a finite field")]
    NotFiniteField,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("polynomial is not additive: term T^{exponent} is not a power of p")]
    NotAdditive { exponent: usize },
    #[error("input polynomial is zero")]
    ZeroInput,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("wrong characteristic: {0}")]
    WrongCharacteristic(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("determinant is not a nonzero constant")]
    NonConstantDeterminant,
    #[error("derivation does not have the triangular shape: {0}")]
    BadDerivationShape(String),
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("triangularization failed")]
    TriangularizationFailed,
    #[error("matrix could not be brought into a known family shape")]
    NotNormalized,
    #[error("matrix is not exponential: {0}")]
    NotExponential(String),
    #[error("search space too large: {candidates} candidates exceed the ceiling {ceiling}")]
    TooLarge { candidates: u128, ceiling: u64 },
    #[error("no witness found by exhaustive search")]
    NotFound,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("witness step rejected: {0}")]
    WitnessRejected(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// The variant name, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MixedFields => "MixedFields",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotFiniteField => "NotFiniteField",
            Error::InvalidField(_) => "InvalidField",
            Error::NotAdditive { .. } => "NotAdditive",
            Error::ZeroInput => "ZeroInput",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotNilpotent => "NotNilpotent",
            Error::WrongCharacteristic(_) => "WrongCharacteristic",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::NonConstantDeterminant => "NonConstantDeterminant",
            Error::BadDerivationShape(_) => "BadDerivationShape",
            Error::ZeroScalar => "ZeroScalar",
            Error::SingularMatrix => "SingularMatrix",
            Error::TriangularizationFailed => "TriangularizationFailed",
            Error::NotNormalized => "NotNormalized",
            Error::NotExponential(_) => "NotExponential",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotFound => "NotFound",
            Error::Unsupported(_) => "Unsupported",
            Error::WitnessRejected(_) => "WitnessRejected",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

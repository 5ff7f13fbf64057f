use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("rows are linearly dependent")]
    DependentRows,
    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("rational gate must have a monomial numerator, got {0}")]
    NonUnitNumerator(String),
    #[error("Gram-Schmidt did not reach standard form for expansion factors up to {0}")]
    ExpansionLimit(usize),
    #[error("input check matrix is catastrophic (invariant factors not all one)")]
    CatastrophicInput,
    #[error("check matrix is rank deficient")]
    RankDeficient,
    #[error("matrix is singular")]
    Singular,
    #[error("commutation relations not preserved: {0}")]
    RelationViolated(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("construction failed: {0}")]
    Construction(String),
}

impl Error {
    /// Stable machine name used by the command-line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::BothZero => "BOTH_ZERO",
            Error::ZeroDenominator => "ZERO_DENOMINATOR",
            Error::Parse(_) => "PARSE_ERROR",
            Error::DimensionMismatch(_) => "DIMENSION_MISMATCH",
            Error::DependentRows => "DEPENDENT_ROWS",
            Error::IndexOutOfRange { .. } => "INDEX_OUT_OF_RANGE",
            Error::NonUnitNumerator(_) => "NON_UNIT_NUMERATOR",
            Error::ExpansionLimit(_) => "EXPANSION_LIMIT",
            Error::CatastrophicInput => "CATASTROPHIC_INPUT",
            Error::RankDeficient => "RANK_DEFICIENT",
            Error::Singular => "SINGULAR",
            Error::RelationViolated(_) => "RELATION_VIOLATED",
            Error::InvalidParams(_) => "INVALID_PARAMS",
            Error::Construction(_) => "CONSTRUCTION_FAILED",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

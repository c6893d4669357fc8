use thiserror::Error;

/// Errors raised by series arithmetic, family construction and the verifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by non-unit: lowest nonzero coefficient of the divisor is {0}")]
    DivisionByNonUnit(String),

    #[error("valuation error: numerator valuation {num} is below divisor valuation {den}")]
    ValuationError { num: usize, den: usize },

    #[error("composition requires an inner series with zero constant term")]
    CompositionError,

    #[error("geometric sum requires zero constant term at (0,0)")]
    GeomError,

    #[error("parts {parts:?} do not sum to {n}")]
    PartitionError { n: usize, parts: Vec<usize> },

    #[error("singular denominator: {0}")]
    SingularDenominator(String),

    #[error("out of range: {0}")]
    RangeError(String),

    #[error("invalid configuration: {0}")]
    ConfigError(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Every failure the library can report.
///
/// The `Display` form always starts with the variant name so that command-line
/// callers can match on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("RangeViolation: {0}")]
    RangeViolation(String),
    #[error("MatchViolation: {0}")]
    MatchViolation(String),
    #[error("OrderViolation: {0}")]
    OrderViolation(String),
    #[error("LevelMismatch: {0}")]
    LevelMismatch(String),
    #[error("NotComposable: {0}")]
    NotComposable(String),
    #[error("InvalidSequence: {0}")]
    InvalidSequence(String),
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("DegreeMismatch: {0}")]
    DegreeMismatch(String),
    #[error("SizeBound: {0}")]
    SizeBound(String),
    #[error("NotImplementedLevel: {0}")]
    NotImplementedLevel(String),
    #[error("Gamma0Overflow: {0}")]
    Gamma0Overflow(String),
    #[error("InvalidNotation: {0}")]
    InvalidNotation(String),
    #[error("OutOfRange: {0}")]
    OutOfRange(String),
    #[error("NotBinary: {0}")]
    NotBinary(String),
    #[error("Overflow: {0}")]
    Overflow(String),
}

impl Error {
    /// The bare variant name, e.g. `"RangeViolation"`.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RangeViolation(_) => "RangeViolation",
            Error::MatchViolation(_) => "MatchViolation",
            Error::OrderViolation(_) => "OrderViolation",
            Error::LevelMismatch(_) => "LevelMismatch",
            Error::NotComposable(_) => "NotComposable",
            Error::InvalidSequence(_) => "InvalidSequence",
            Error::Parse(_) => "ParseError",
            Error::DegreeMismatch(_) => "DegreeMismatch",
            Error::SizeBound(_) => "SizeBound",
            Error::NotImplementedLevel(_) => "NotImplementedLevel",
            Error::Gamma0Overflow(_) => "Gamma0Overflow",
            Error::InvalidNotation(_) => "InvalidNotation",
            Error::OutOfRange(_) => "OutOfRange",
            Error::NotBinary(_) => "NotBinary",
            Error::Overflow(_) => "Overflow",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("series precondition violated: {0}")]
    Series(String),
    #[error("window too small: need {needed}, have {have}")]
    WindowTooSmall { needed: usize, have: usize },
    #[error("matrix is not row-finite on the window")]
    NotRowFinite,
    #[error("diagonal entry {0} is not invertible")]
    NonInvertibleDiagonal(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("enumeration budget exceeded: n = {n} > {max}")]
    Budget { n: usize, max: usize },
    #[error("routes disagree: {0}")]
    RouteMismatch(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("time budget of {0} ms exhausted")]
    Timeout(u64),
}

impl Error {
    /// Stable numeric code, shared with the C ABI.
    pub fn code(&self) -> i32 {
        match self {
            Error::DivisionByZero => 10,
            Error::NotDivisible(_) => 11,
            Error::Parse(_) => 12,
            Error::UnknownVariable(_) => 13,
            Error::UnknownName(_) => 14,
            Error::Series(_) => 15,
            Error::WindowTooSmall { .. } => 16,
            Error::NotRowFinite => 17,
            Error::NonInvertibleDiagonal(_) => 18,
            Error::Dimension(_) => 19,
            Error::Budget { .. } => 20,
            Error::RouteMismatch(_) => 21,
            Error::Invalid(_) => 22,
            Error::Timeout(_) => 23,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

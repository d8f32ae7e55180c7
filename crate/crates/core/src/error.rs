use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} out of range for group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("group kind mismatch: {0}")]
    KindMismatch(String),

    #[error("enumeration of {requested} elements exceeds the element cap {cap}")]
    TooManyElements { requested: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} exceeds the supported maximum")]
    DimensionTooLarge(usize),

    #[error("operator is not Hermitian (asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("non-finite entry in operator")]
    NonFinite,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("element outside the domain of the map: {0}")]
    DomainEscape(String),

    #[error("word is not reduced: {0}")]
    UnreducedWord(String),

    #[error("cannot parse word {0:?}")]
    WordParse(String),

    #[error("projection did not converge after {0} iterations")]
    NonConvergence(usize),

    #[error("certificate check failed: {0}")]
    Certificate(String),

    #[error("linear program is {0}")]
    Lp(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

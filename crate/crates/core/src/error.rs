use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("declared degree {declared} is below the actual degree {actual}")]
    DeclaredDegree { declared: usize, actual: usize },

    #[error("resultant of two zero polynomials")]
    BothZero,

    #[error("invalid number field: {0}")]
    InvalidField(String),

    #[error("invalid field element: {0}")]
    InvalidElement(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("not a characteristic polynomial: {0}")]
    NotCharPoly(String),

    #[error("exponent must be at least 1")]
    ZeroExponent,

    #[error("invalid place: {0}")]
    InvalidPlace(String),

    #[error("level {level} is not a multiple of the sample exponent {n}")]
    LevelNotMultiple { level: u64, n: u64 },

    #[error("place {place}: {reason}")]
    MissingEntry { place: String, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("label mismatch: {0}")]
    LabelMismatch(String),

    #[error("no common level <= {cap} at place {place}")]
    NoCommonLevel { place: String, cap: u64 },

    #[error("cannot group sheets: {0}")]
    Grouping(String),

    #[error("polynomial does not split: {0}")]
    NotSplit(String),

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("Hodge data: {0}")]
    Hodge(String),

    #[error("elliptic curve: {0}")]
    Curve(String),

    #[error("line {line}: {reason}")]
    Dataset { line: usize, reason: String },

    #[error("dataset contains no sheets")]
    EmptySystem,

    #[error("i/o: {0}")]
    Io(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

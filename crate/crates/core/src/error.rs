use thiserror::Error;

/// Errors produced while parsing inputs or running invariant computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("entry {value} at row {row}, column {col} is outside 1..={n}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: i64,
        n: usize,
    },

    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(i64, i64),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("map {0:?} is not a biquandle endomorphism")]
    NotAnEndomorphism(Vec<usize>),

    #[error("filtration stage {0} does not contain stage {1}")]
    NotNested(usize, usize),

    #[error("persistence requires the first filtration stage to be empty")]
    FirstStageNotEmpty,

    #[error("requested homology dimension {requested} needs max_dim >= {needed}, complex has {max_dim}")]
    InsufficientDimension {
        requested: usize,
        needed: usize,
        max_dim: usize,
    },

    #[error("integer overflow during Smith normal form")]
    Overflow,

    #[error("stage {stage} out of range 0..={max}")]
    StageOutOfRange { stage: usize, max: usize },

    #[error("quiver has {0} vertices; isomorphism search is limited to {1}")]
    TooLarge(usize, usize),

    #[error("unknown format `{0}`")]
    UnknownFormat(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

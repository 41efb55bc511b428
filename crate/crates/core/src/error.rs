use thiserror::Error;

use crate::dsl::ParseError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeanError {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("input contains NaN")]
    NotANumber,

    #[error("invalid weighting: {0}")]
    InvalidWeighting(String),

    #[error("invalid value vector: {0}")]
    InvalidValues(String),

    #[error("invalid index map: {0}")]
    InvalidMap(String),

    #[error("exponent out of range: {0}")]
    ExponentOutOfRange(String),

    #[error("weighting carries no exact rational representation")]
    MissingExact,

    #[error("rational expansion needs {needed} copies, cap is {cap}")]
    ExpansionOverflow { needed: u128, cap: u64 },

    #[error("evaluation failed: {0}")]
    Evaluation(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = MeanError> = std::result::Result<T, E>;

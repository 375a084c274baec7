use thiserror::Error;
use weight_engine::WeightError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AztecError {
    #[error("invalid matching: {0}")]
    Invalid(String),
    #[error("index {index} outside 1..={max}")]
    Range { index: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size {0} exceeds the exact-transition guard {1}")]
    TooLarge(usize, usize),
    #[error("weight field has level {got}, expected {want}")]
    LevelMismatch { got: usize, want: usize },
    #[error(transparent)]
    Weight(#[from] WeightError),
}

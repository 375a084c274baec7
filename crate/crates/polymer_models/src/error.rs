use dist_core::DistError;
use thiserror::Error;
use weight_engine::WeightError;

#[derive(Debug, Error)]
pub enum PolymerError {
    #[error("instance too large for enumeration: {0}")]
    TooLarge(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Dist(#[from] DistError),
}

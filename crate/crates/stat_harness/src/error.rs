use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("empty sample")]
    Empty,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Weight(#[from] weight_engine::WeightError),
    #[error(transparent)]
    Aztec(#[from] aztec_model::AztecError),
    #[error(transparent)]
    Oracle(#[from] exact_oracle::OracleError),
    #[error(transparent)]
    Polymer(#[from] polymer_models::PolymerError),
    #[error(transparent)]
    Dist(#[from] dist_core::DistError),
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("bad vertex: {0}")]
    BadVertex(String),
    #[error("edge weight must be positive and finite, got {0}")]
    BadWeight(f64),
    #[error("duplicate edge ({0}, {1})")]
    Duplicate(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("graph has {0} white and {1} black vertices")]
    Unbalanced(usize, usize),
    #[error("graph too large for enumeration: {0} vertices per colour (limit {1})")]
    TooLarge(usize, usize),
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error(transparent)]
    Polymer(#[from] polymer_models::PolymerError),
}

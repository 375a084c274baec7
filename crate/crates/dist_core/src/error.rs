use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistError {
    #[error("shape must be positive and finite, got {0}")]
    InvalidShape(f64),
    #[error("scale must be positive and finite, got {0}")]
    InvalidScale(f64),
    #[error("beta parameters must be positive and finite, got ({0}, {1})")]
    InvalidBeta(f64, f64),
    #[error("{0} outside the domain of {1}")]
    Domain(f64, &'static str),
    #[error("polygamma order {0} not supported (0..=3)")]
    UnsupportedOrder(u32),
}

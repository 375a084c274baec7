use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightError {
    #[error("{name} index {index} outside the stored window")]
    OutOfWindow { name: &'static str, index: i64 },
    #[error("inadmissible shape {value} for {what} at (i={i}, j={j})")]
    Inadmissible {
        what: &'static str,
        i: i64,
        j: i64,
        value: f64,
    },
    #[error("shape {0} below the linear-sampling floor {1}; use the log-domain field")]
    ShapeTooSmall(f64, f64),
    #[error("invalid parameter set: {0}")]
    Invalid(String),
    #[error("window too small: need at least 2x2, got {0}x{1}")]
    WindowTooSmall(usize, usize),
    #[error("face-weight ordering violated: {0}")]
    Ordering(String),
    #[error("length mismatch: {0}")]
    Length(String),
}

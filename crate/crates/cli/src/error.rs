use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Compute(String),
    #[error("{0} check(s) failed")]
    Failed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

macro_rules! compute_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Compute(e.to_string())
            }
        }
    )*};
}

compute_from!(
    weight_engine::WeightError,
    aztec_model::AztecError,
    polymer_models::PolymerError,
    serde_json::Error
);

impl From<stat_harness::HarnessError> for CliError {
    fn from(e: stat_harness::HarnessError) -> Self {
        match e {
            stat_harness::HarnessError::Config(m) => CliError::Config(m),
            other => CliError::Compute(other.to_string()),
        }
    }
}

pub fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

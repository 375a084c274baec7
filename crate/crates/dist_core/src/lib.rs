//! Random-variable primitives shared by every other crate in the workspace.
//!
//! Everything here is a pure function of its arguments plus an explicitly
//! passed [`RngStream`].

mod error;
mod lukacs;
mod rng;
mod sampling;
mod special;

pub use error::DistError;
pub use lukacs::{lukacs_merge, lukacs_split};
pub use rng::RngStream;
pub use sampling::{
    sample_beta, sample_gamma, sample_inv_beta, sample_inv_gamma, sample_log_beta,
    sample_log_gamma, BetaParams, GammaParams, GammaSampler,
};
pub use special::{log_gamma_cumulant, polygamma, EULER_GAMMA};

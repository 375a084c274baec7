//! Directed polymers in random environments: the hybrid multi-path polymers
//! on the two-regime digraph, the stationary log-Gamma and strict-weak
//! polymers, the boundary-weighted log-Gamma polymer and the Beta random walk.

mod edge_gamma;
mod error;
mod hybrid;
mod lattice;
mod path;
mod restriction;
mod rwre;
mod stationary;

pub use edge_gamma::EdgeGammaEnv;
pub use error::PolymerError;
pub use hybrid::{
    bg_polymer_exact, enumerate_path_tuples, glg_polymer_exact, hybrid_polymer_exact,
    HybridWeights, PolymerMeasure, MAX_ENUM,
};
pub use lattice::{crossings, x_mid, CrossingStats, LatticePath, Move};
pub use path::{in_support, steps_from, PathTuple, Step};
pub use restriction::{stationarity_restriction_check, RestrictionComparison};
pub use rwre::{beta_rwre, beta_rwre_with};
pub use stationary::{stat_loggamma, stat_strictweak, StatModel, StatPolymerEnv};

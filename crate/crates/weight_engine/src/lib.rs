//! Weight fields for the Gamma-disordered Aztec diamond and the shuffle
//! recursions acting on them.

mod error;
mod face;
mod field;
mod logfield;
mod params;
mod quadrature;
mod swap;
mod window;

pub use error::WeightError;
pub use face::{fock_face_weights, limit_face_weights, FaceWeightGrid};
pub use field::{cascade, partition_product, sample_weight_field, Cascade, WeightField};
pub use logfield::{log_partition_of_field, sample_log_weight_field, LogWeightField};
pub use params::{ParamSet, MIN_LINEAR_SHAPE};
pub use quadrature::{lognormal_upshuffle_reference, UpshuffleDependence};
pub use swap::{hswap_update, vswap_update};
pub use window::{sample_weight_window, WeightWindow};

//! Aztec diamond coordinates, perfect matchings and weighted domino shuffling.
//!
//! White vertices are `w(l, k)` with column `l in 1..=n` and label
//! `k in 1..=n+1`; black vertices are `bk(i, j)` with `i in 1..=n+1`,
//! `j in 1..=n`. A matching records, per white vertex, the direction of its
//! partner.

mod error;
mod matching;
mod observables;
mod shuffle;

pub use error::AztecError;
pub use matching::{black_position, matching_weight, white_position, Dir, EdgeRef, Matching};
pub use observables::{horizontal_slice, turning_points, vertical_slice, TurningPoints};
pub use shuffle::{
    destroy_and_slide, empty_faces, fill_faces, sample_final_matching, sample_trajectory,
    sample_trajectory_from_cascade, shuffle_step, shuffle_transition_distribution, PartialMatching,
};

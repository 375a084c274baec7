//! Exhaustive dimer oracles on small bipartite graphs, local graph moves, and
//! the column-swap graphs whose matchings encode polymer path tuples.

mod aztec;
mod columns;
mod enumerate;
mod error;
mod expand;
mod graph;
mod spider;
mod weights;

pub use aztec::{aztec_graph, aztec_transfer_log_z, exact_aztec_measure, AztecGraph};
pub use columns::{
    build_hswap, build_vswap, ColumnBuilder, ColumnGraph, EdgeKind, EdgeTag, SwapGraph, SwapKind,
    BLOCK_LEFT_PENDANT, BLOCK_RIGHT_PENDANT,
};
pub use enumerate::{enumerate_matchings, log_sum_exp, tv_distance, ExactMeasure, Law, MAX_SIDE};
pub use error::OracleError;
pub use expand::{vertex_contract, vertex_expand, Expansion};
pub use graph::{BipartiteGraph, Edge, Vertex};
pub use spider::{spider_move, SpiderMove};
pub use weights::{horizontal_polymer_weights, vertical_polymer_weights};

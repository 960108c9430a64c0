//! Structural analysis of position graphs: block/cut-vertex decomposition,
//! Wilson classification with component-size prediction, the rooted arrow
//! depiction, routing inside star instances, and atomic parts.

mod arrow;
mod atomic;
mod blocks;
mod route;
mod wilson;

pub use arrow::{arrow_depiction, ArrowDepiction, ArrowNode, Relation};
pub use atomic::{atomic_parts, AtomicPartition, ATOMIC_ENUMERATION_LIMIT};
pub use blocks::{block_decomposition, is_biconnected_block, BlockDecomposition};
pub use route::{replay_swaps, route_in_star_fs, SwapStep};
pub use wilson::{
    big_factorial, classify_block, is_cycle_graph, is_isomorphic, is_theta0, is_wilsonian,
    predicted_component_size, BlockReport, WilsonClass, WilsonCondition, WilsonTag,
    WilsonianReport,
};

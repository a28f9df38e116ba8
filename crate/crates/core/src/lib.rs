//! Minimum cuts of unweighted hypergraphs with small rank.
//!
//! Vertices are dense ids `0..n`; hyperedges are sorted vertex lists of size at least two.

pub mod driver;
pub mod error;
pub mod expander;
pub mod generators;
pub mod hypergraph;
pub mod io;
pub mod oracle;
pub mod ordering;
pub mod seed;
pub mod smallcut;
pub mod sparsify;
pub mod trimshave;

pub use driver::{
    cx_min_cut, exp_decomp_min_cut, min_cut, min_cut_with, structural_report, MinCutOptions,
    StructuralReport,
};
pub use error::{Error, Result};
pub use hypergraph::{contract, cut_capacity, BuildOptions, Cut, Hypergraph, VertexPartition};
pub use ordering::slow_min_cut;
pub use smallcut::{exhaustive_small_min_cut, small_size_min_cut};

/// `⌈log₂ x⌉`, with `log2_ceil(0) = log2_ceil(1) = 0`.
pub fn log2_ceil(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

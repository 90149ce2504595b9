//! Community detection with standard and flat modularity.
//!
//! The crate provides:
//!
//! - [`graph`]: a compact undirected simple graph with edge-list I/O,
//! - [`scoring`]: resolution modularity `Q_r` and flat modularity `Qf_R` in
//!   exact integer-scaled arithmetic,
//! - [`greedy`]: the greedy agglomerative climb that merges the
//!   best-improving cluster pair until no merge helps,
//! - [`lfr`]: an LFR-style benchmark generator with planted communities,
//! - [`metrics`]: pairwise confusion counts, the Matthews correlation
//!   coefficient, and degree-bucketed breakdowns,
//! - [`harness`]: sweep orchestration, tables, and SVG figures.
//!
//! ```
//! use flatmod::graph::load_edge_list;
//! use flatmod::greedy::greedy_cluster;
//! use flatmod::scoring::ScoreVariant;
//!
//! // two triangles joined by a bridge
//! let g = load_edge_list("0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n2 3").unwrap();
//! let result = greedy_cluster(&g, ScoreVariant::standard(1.0).unwrap());
//! assert_eq!(result.partition.assignment(), &[0, 0, 0, 1, 1, 1]);
//! ```
//!
//! The `book/` directory of the repository walks through the concepts; its
//! code snippets are compiled as doc-tests below.

pub mod error;
pub mod graph;
pub mod greedy;
pub mod harness;
pub mod lfr;
pub mod metrics;
pub mod partition;
pub mod scoring;

pub use graph::Graph;
pub use partition::Partition;
pub use scoring::{Resolution, ScoreVariant};

// Compile the book's code snippets with `cargo test --doc` so the guide
// cannot drift from the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/modularity.md")]
    mod modularity {}
    #[doc = include_str!("../../../book/src/greedy.md")]
    mod greedy {}
    #[doc = include_str!("../../../book/src/benchmarks.md")]
    mod benchmarks {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}

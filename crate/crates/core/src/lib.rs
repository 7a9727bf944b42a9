//! Dynamic directed-graph data structures.
//!
//! Fully dynamic structures (topological order, path and reachability-tree
//! reporting, strongly connected components) are built on a randomized
//! reachability engine that maintains the inverse of `I - X` over a prime
//! field. Incremental structures (reachability, approximate and exact
//! shortest paths) are deterministic and store paths as persistent
//! catenable sequences.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod counters;
pub mod dag;
pub mod decscc;
mod error;
pub mod fully;
pub mod graph;
pub mod incremental;
pub mod oracle;
pub mod reach;
pub(crate) mod scc;

pub use counters::Counters;
pub use error::{Error, Result};
pub use graph::{DiGraph, PathWitness, UpdateEvent, Vertex};

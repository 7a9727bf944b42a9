//! Fully dynamic structures for graphs that stay acyclic.

mod detector;
mod path;
mod topo;
mod tree;

pub use detector::LayeredDetector;
pub use path::DagPath;
pub use topo::{Rewrite, TopOrder};
pub use tree::{default_delta, DagTree};

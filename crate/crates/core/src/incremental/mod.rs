//! Deterministic incremental structures: reachability trees and paths,
//! approximate and exact shortest paths, rollback, and an offline driver
//! that handles deletions by replaying insertions over a segment tree.

mod approx;
mod catpath;
mod dist_matrix;
mod exact;
mod offline;
mod reach_path;
mod reach_tree;
mod trees;

pub use approx::IncApprox;
pub use catpath::CatPath;
pub use dist_matrix::{closure_rounds, recompute_with, DistPathMatrix};
pub use exact::{ExactTree, IncExact};
pub use offline::{offline_run, OfflineAnswer, OfflineEngine, OfflineQuery, OfflineTarget};
pub use reach_path::IncPath;
pub use reach_tree::IncTree;
pub use trees::Trees;

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Stack of saved states for `mark`/`rollback`.
#[derive(Debug, Clone)]
pub(crate) struct Snapshots<T> {
    stack: Vec<T>,
}

impl<T> Default for Snapshots<T> {
    fn default() -> Self {
        Snapshots { stack: Vec::new() }
    }
}

impl<T: Clone> Snapshots<T> {
    pub(crate) fn push(&mut self, state: &T) {
        self.stack.push(state.clone());
    }

    pub(crate) fn pop(&mut self) -> Result<T> {
        self.stack.pop().ok_or(Error::NoMark)
    }
}

/// `⌈n^alpha⌉`, at least 1.
pub fn phase_len_for(n: usize, alpha: f64) -> usize {
    (libm::ceil(libm::pow(n as f64, alpha)) as usize).max(1)
}

/// Default phase-length exponent.
pub const DEFAULT_ALPHA: f64 = 0.529;

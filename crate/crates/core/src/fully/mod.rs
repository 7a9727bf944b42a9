//! Phase-based fully dynamic structures for general digraphs.
//!
//! A phase spans `F` insertions. Inserted edges of the current phase (`E+`)
//! are kept aside; everything else lives in a decremental SCC structure over
//! `g-`, the phase-start graph minus later deletions. Rollover folds `E+` back
//! in and rebuilds the decremental part.

mod partition;
mod path;
mod phase;
mod scc;
mod tree;

pub use partition::{partition, PartitionResult};
pub use path::FdPath;
pub use phase::PhaseCore;
pub use scc::FdScc;
pub use tree::FdTree;

/// `ceil(sqrt(n))`, at least 1.
pub fn default_phase_len(n: usize) -> usize {
    (libm::ceil(libm::sqrt(n as f64)) as usize).max(1)
}

/// `ceil(n^0.765)` clamped to `[1, n]`.
pub fn default_tree_delta(n: usize) -> usize {
    (libm::ceil(libm::pow(n as f64, 0.765)) as usize).clamp(1, n.max(1))
}

/// SplitMix64 step, used to derive independent engine seeds.
pub(crate) fn mix(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed ^ a.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ b.wrapping_mul(0xc2b2_ae3d_27d4_eb4f);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::partition::{partition, PartitionResult};
use crate::counters::Counters;
use crate::decscc::{DecScc, Split};
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Vertex};
use crate::reach::ReachEngine;

/// Phase bookkeeping shared by the path and tree structures: the current
/// graph, the decremental part over `g-`, the phase's inserted edges, and
/// two engines over `g-` (`q` for point queries, `d` for head rows).
#[derive(Debug, Clone)]
pub struct PhaseCore {
    g: DiGraph,
    dec: DecScc,
    eplus: Vec<(Vertex, Vertex)>,
    q: ReachEngine,
    d: ReachEngine,
    phase_len: usize,
    inserted: usize,
    phase: u64,
}

impl PhaseCore {
    pub fn new(g: DiGraph, phase_len: usize, seed: u64, counters: Arc<Counters>) -> Result<Self> {
        if phase_len == 0 {
            return Err(Error::BadParameter("phase length must be positive"));
        }
        let q = ReachEngine::from_edges(g.n(), g.edges(), super::mix(seed, 1, 0), counters.clone())?;
        let d = ReachEngine::from_edges(g.n(), g.edges(), super::mix(seed, 2, 0), counters)?;
        Ok(PhaseCore { dec: DecScc::new(g.clone()), g, eplus: Vec::new(), q, d, phase_len, inserted: 0, phase: 0 })
    }

    pub fn graph(&self) -> &DiGraph {
        &self.g
    }

    pub fn dec(&self) -> &DecScc {
        &self.dec
    }

    pub fn eplus(&self) -> &[(Vertex, Vertex)] {
        &self.eplus
    }

    pub fn q(&self) -> &ReachEngine {
        &self.q
    }

    pub fn phase(&self) -> u64 {
        self.phase
    }

    /// Inserts an edge; returns true when this closed the phase.
    pub fn insert(&mut self, u: Vertex, v: Vertex, w: Option<f64>) -> Result<bool> {
        self.g.insert_edge(u, v, w)?;
        self.eplus.push((u, v));
        if !self.d.rows().contains(&v) {
            self.d.row_add(v)?;
        }
        self.inserted += 1;
        if self.inserted < self.phase_len {
            return Ok(false);
        }
        for &(a, b) in &self.eplus {
            self.q.insert(a, b)?;
            self.d.insert(a, b)?;
        }
        self.eplus.clear();
        self.d.rows_reset();
        self.dec = DecScc::new(self.g.clone());
        self.inserted = 0;
        self.phase += 1;
        Ok(true)
    }

    /// Deletes an edge; reports the split it caused in `g-`, if any.
    pub fn delete(&mut self, u: Vertex, v: Vertex) -> Result<Option<Split>> {
        self.g.delete_edge(u, v)?;
        if let Some(pos) = self.eplus.iter().position(|&e| e == (u, v)) {
            self.eplus.remove(pos);
            self.d.rows_reset();
            for i in 0..self.eplus.len() {
                let head = self.eplus[i].1;
                if !self.d.rows().contains(&head) {
                    self.d.row_add(head)?;
                }
            }
            return Ok(None);
        }
        self.q.delete(u, v)?;
        self.d.delete(u, v)?;
        self.dec.delete(u, v)
    }

    pub fn partition(&self, s: Vertex) -> PartitionResult {
        partition(s, &self.q, &self.d, &self.eplus)
    }

    /// Re-randomizes both engines.
    pub fn rebuild_engines(&mut self) -> Result<()> {
        self.q.rebuild()?;
        self.d.rebuild()
    }
}

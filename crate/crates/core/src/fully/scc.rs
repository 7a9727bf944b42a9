use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::counters::Counters;
use crate::decscc::DecScc;
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Vertex};
use crate::reach::ReachEngine;
use crate::scc::{canonical_labels, tarjan};

/// Fully dynamic strongly connected components.
///
/// Components are read off a certificate graph `H`: a cycle through every
/// component of `g-`, plus for every inserted head `y` the edges `y -> w`
/// for all `w` that `y` reaches and `w -> y` for all `w` reaching `y` in the
/// current graph. `H` and `g` have the same strong connectivity.
#[derive(Debug, Clone)]
pub struct FdScc {
    g: DiGraph,
    dec: DecScc,
    eplus: Vec<(Vertex, Vertex)>,
    fwd: ReachEngine,
    rev: ReachEngine,
    phase_len: usize,
    inserted: usize,
}

impl FdScc {
    pub fn new(g: DiGraph, phase_len: usize, seed: u64, counters: Arc<Counters>) -> Result<Self> {
        if phase_len == 0 {
            return Err(Error::BadParameter("phase length must be positive"));
        }
        let fwd = ReachEngine::from_edges(g.n(), g.edges(), super::mix(seed, 1, 0), counters.clone())?;
        let rev = ReachEngine::from_edges(g.n(), g.edges().map(|(u, v)| (v, u)), super::mix(seed, 2, 0), counters)?;
        Ok(FdScc { dec: DecScc::new(g.clone()), g, eplus: Vec::new(), fwd, rev, phase_len, inserted: 0 })
    }

    pub fn graph(&self) -> &DiGraph {
        &self.g
    }

    pub fn dec(&self) -> &DecScc {
        &self.dec
    }

    fn refresh_rows(&mut self) -> Result<()> {
        self.fwd.rows_reset();
        self.rev.rows_reset();
        for i in 0..self.eplus.len() {
            let y = self.eplus[i].1;
            if !self.fwd.rows().contains(&y) {
                self.fwd.row_add(y)?;
                self.rev.row_add(y)?;
            }
        }
        Ok(())
    }

    pub fn insert(&mut self, u: Vertex, v: Vertex, w: Option<f64>) -> Result<()> {
        self.g.insert_edge(u, v, w)?;
        self.fwd.insert(u, v)?;
        self.rev.insert(v, u)?;
        self.eplus.push((u, v));
        if !self.fwd.rows().contains(&v) {
            self.fwd.row_add(v)?;
            self.rev.row_add(v)?;
        }
        self.inserted += 1;
        if self.inserted == self.phase_len {
            self.dec = DecScc::new(self.g.clone());
            self.eplus.clear();
            self.refresh_rows()?;
            self.inserted = 0;
        }
        Ok(())
    }

    pub fn delete(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.g.delete_edge(u, v)?;
        self.fwd.delete(u, v)?;
        self.rev.delete(v, u)?;
        if let Some(pos) = self.eplus.iter().position(|&e| e == (u, v)) {
            self.eplus.remove(pos);
            self.refresh_rows()
        } else {
            self.dec.delete(u, v).map(|_| ())
        }
    }

    /// Adjacency lists of the certificate graph.
    pub fn certificate(&self) -> Vec<Vec<Vertex>> {
        let n = self.g.n();
        let mut adj = vec![Vec::new(); n];
        for id in self.dec.ids() {
            let m = self.dec.members(id).expect("live id");
            if m.len() > 1 {
                for i in 0..m.len() {
                    adj[m[i]].push(m[(i + 1) % m.len()]);
                }
            }
        }
        for (&y, (out, inn)) in self.fwd.rows().iter().zip(self.fwd.rows_read().into_iter().zip(self.rev.rows_read())) {
            for w in 0..n {
                if w == y {
                    continue;
                }
                if out[w] {
                    adj[y].push(w);
                }
                if inn[w] {
                    adj[w].push(y);
                }
            }
        }
        adj
    }

    /// Component labels (minimum member id) for every vertex.
    pub fn components(&self) -> Vec<usize> {
        let (comp, _) = tarjan(&self.certificate());
        canonical_labels(&comp)
    }

    pub fn rebuild_engines(&mut self) -> Result<()> {
        self.fwd.rebuild()?;
        self.rev.rebuild()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn make(n: usize, f: usize) -> FdScc {
        FdScc::new(DiGraph::new(n), f, 9, Arc::new(Counters::default())).unwrap()
    }

    #[test]
    fn two_cycle_merges_and_splits() {
        let mut s = make(3, 2);
        s.insert(0, 1, None).unwrap();
        s.insert(1, 0, None).unwrap();
        assert_eq!(s.components(), vec![0, 0, 2]);
        s.delete(1, 0).unwrap();
        assert_eq!(s.components(), vec![0, 1, 2]);
    }

    #[test]
    fn path_in_dec_plus_inserted_back_edge() {
        let g = DiGraph::from_edges(2, &[(0, 1)]).unwrap();
        let mut s = FdScc::new(g, 5, 1, Arc::new(Counters::default())).unwrap();
        assert_eq!(s.components(), vec![0, 1]);
        s.insert(1, 0, None).unwrap();
        assert_eq!(s.components(), vec![0, 0]);
    }
}

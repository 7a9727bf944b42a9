use alloc::sync::Arc;
use alloc::vec::Vec;

use super::topo::{Rewrite, TopOrder};
use crate::counters::Counters;
use crate::error::{Error, Result};
use crate::graph::{DiGraph, PathWitness, Vertex};
use crate::reach::ReachEngine;

/// Topological order plus point-to-point path reporting on a dynamic DAG.
#[derive(Debug, Clone)]
pub struct DagPath {
    g: DiGraph,
    engine: ReachEngine,
    order: TopOrder,
    counters: Arc<Counters>,
}

impl DagPath {
    pub fn new(g: DiGraph, seed: u64, counters: Arc<Counters>) -> Result<Self> {
        let order = TopOrder::from_graph(&g)?;
        let engine = ReachEngine::from_edges(g.n(), g.edges(), seed, counters.clone())?;
        Ok(DagPath { g, engine, order, counters })
    }

    pub fn graph(&self) -> &DiGraph {
        &self.g
    }

    pub fn order(&self) -> &TopOrder {
        &self.order
    }

    pub fn engine(&self) -> &ReachEngine {
        &self.engine
    }

    pub fn counters(&self) -> &Arc<Counters> {
        &self.counters
    }

    pub fn insert(&mut self, u: Vertex, v: Vertex, w: Option<f64>) -> Result<Option<Rewrite>> {
        self.g.insert_edge(u, v, w)?;
        let engine = &self.engine;
        match self.order.insert(u, v, |a, b| engine.reaches(a, b)) {
            Ok(rw) => {
                self.engine.insert(u, v)?;
                Ok(rw)
            }
            Err(e) => {
                self.g.delete_edge(u, v)?;
                Err(e)
            }
        }
    }

    /// Deletions never invalidate a topological order.
    pub fn delete(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.g.delete_edge(u, v)?;
        self.engine.delete(u, v)
    }

    pub fn reaches(&self, s: Vertex, t: Vertex) -> bool {
        self.engine.reaches(s, t)
    }

    /// Simple `s -> t` path, or `None` if unreachable.
    ///
    /// Walks forward from `s`, each time stepping to the first out-neighbour
    /// (in topological order) that still reaches `t`. Heads queried without
    /// success precede the next path vertex, so no vertex is queried twice
    /// and at most `pi(t) - pi(s) + 1` engine queries are issued.
    pub fn path(&self, s: Vertex, t: Vertex) -> Result<Option<PathWitness>> {
        self.g.check_vertex(s)?;
        self.g.check_vertex(t)?;
        if s == t {
            return Ok(Some(PathWitness::trivial(s)));
        }
        // a valid order rules out s -> t when t comes first, with no query
        if self.order.pi(s) > self.order.pi(t) || !self.engine.reaches(s, t) {
            return Ok(None);
        }
        let limit = self.order.pi(t);
        let mut vertices = alloc::vec![s];
        let mut cur = s;
        while cur != t {
            let mut heads: Vec<Vertex> =
                self.g.out(cur).iter().copied().filter(|&h| self.order.pi(h) <= limit).collect();
            heads.sort_unstable_by_key(|&h| self.order.pi(h));
            let next = heads
                .into_iter()
                .find(|&h| h == t || self.engine.reaches(h, t))
                .ok_or(Error::InternalInconsistency("no out-neighbour reaches the target"))?;
            vertices.push(next);
            cur = next;
        }
        Ok(Some(self.g.witness(vertices).expect("walk follows graph edges")))
    }

    pub fn rebuild(&mut self) -> Result<()> {
        self.engine.rebuild()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn make(n: usize) -> DagPath {
        DagPath::new(DiGraph::new(n), 1, Arc::new(Counters::default())).unwrap()
    }

    #[test]
    fn chain_path() {
        let mut d = make(3);
        d.insert(0, 1, None).unwrap();
        d.insert(1, 2, None).unwrap();
        assert_eq!(d.path(0, 2).unwrap().unwrap().vertices, alloc::vec![0, 1, 2]);
        assert_eq!(d.path(2, 0).unwrap(), None);
        assert_eq!(d.path(1, 1).unwrap().unwrap().vertices, alloc::vec![1]);
    }

    #[test]
    fn cycle_rejected_without_side_effects() {
        let mut d = make(3);
        d.insert(0, 1, None).unwrap();
        d.insert(1, 2, None).unwrap();
        let before = d.order().clone();
        assert_eq!(d.insert(2, 0, None).unwrap_err(), Error::CycleIntroduced { u: 2, v: 0 });
        assert_eq!(d.order(), &before);
        assert!(!d.graph().has_edge(2, 0));
        assert!(!d.reaches(2, 0));
    }

    #[test]
    fn reorders_on_backward_edge() {
        let mut d = make(2);
        d.insert(1, 0, None).unwrap();
        assert_eq!(d.order().order(), &[1, 0]);
        assert!(d.order().is_valid_for(d.graph()));
    }
}

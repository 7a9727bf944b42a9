use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::counters::Counters;
use crate::error::Result;
use crate::graph::{DiGraph, Vertex};
use crate::reach::ReachEngine;

/// Answers "is there a `u -> v` path whose penultimate vertex lies in `Y`".
///
/// Runs an engine on three copies `V, V', V''` of the vertex set: each graph
/// edge `uv` becomes `uv` and `u'v''`, and each `y` in `Y` adds `yy'`. Then
/// `u` reaches `v''` iff some `u -> y -> v` walk has `y` in `Y`.
#[derive(Debug, Clone)]
pub struct LayeredDetector {
    n: usize,
    in_y: Vec<bool>,
    engine: ReachEngine,
    counters: Arc<Counters>,
}

impl LayeredDetector {
    pub fn new(g: &DiGraph, y: &[Vertex], seed: u64, counters: Arc<Counters>) -> Result<Self> {
        let n = g.n();
        let mut in_y = vec![false; n];
        for &v in y {
            g.check_vertex(v)?;
            in_y[v] = true;
        }
        let mut edges = Vec::with_capacity(2 * g.m() + y.len());
        for (u, v) in g.edges() {
            edges.push((u, v));
            edges.push((n + u, 2 * n + v));
        }
        edges.extend((0..n).filter(|&v| in_y[v]).map(|v| (v, n + v)));
        let engine = ReachEngine::from_edges(3 * n, edges, seed, counters.clone())?;
        Ok(LayeredDetector { n, in_y, engine, counters })
    }

    pub fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.engine.insert(u, v)?;
        self.engine.insert(self.n + u, 2 * self.n + v)
    }

    pub fn delete_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.engine.delete(u, v)?;
        self.engine.delete(self.n + u, 2 * self.n + v)
    }

    /// Adds `y` to `Y`; returns false if it was already there.
    pub fn add_y(&mut self, y: Vertex) -> Result<bool> {
        if self.in_y[y] {
            return Ok(false);
        }
        self.engine.insert(y, self.n + y)?;
        self.in_y[y] = true;
        Ok(true)
    }

    pub fn contains(&self, y: Vertex) -> bool {
        self.in_y[y]
    }

    pub fn members(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(|&v| self.in_y[v])
    }

    pub fn detects(&self, u: Vertex, v: Vertex) -> bool {
        self.counters.detector_query();
        self.engine.peek(u, 2 * self.n + v)
    }

    pub fn rebuild(&mut self) -> Result<()> {
        self.engine.rebuild()
    }

    pub fn mark(&mut self) {
        self.engine.mark();
    }

    pub fn rollback(&mut self) -> Result<()> {
        self.engine.rollback()
    }
}

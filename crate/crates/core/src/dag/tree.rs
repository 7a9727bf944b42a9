use alloc::sync::Arc;
use alloc::vec::Vec;

use super::detector::LayeredDetector;
use super::path::DagPath;
use super::topo::Rewrite;
use crate::counters::Counters;
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Vertex};

const RHO: f64 = 0.529;

/// `ceil(n^((1+rho)/2))` clamped to `[1, n]`.
pub fn default_delta(n: usize) -> usize {
    let d = libm::ceil(libm::pow(n as f64, (1.0 + RHO) / 2.0)) as usize;
    d.clamp(1, n.max(1))
}

/// Single-source reachability trees on a dynamic DAG.
///
/// Vertex ids are split into blocks of width `delta`; detector `j` answers
/// whether some path reaches `t` through an in-neighbour in block `j`.
#[derive(Debug, Clone)]
pub struct DagTree {
    inner: DagPath,
    delta: usize,
    detectors: Vec<LayeredDetector>,
}

impl DagTree {
    pub fn new(g: DiGraph, delta: usize, seed: u64, counters: Arc<Counters>) -> Result<Self> {
        let n = g.n();
        if delta == 0 {
            return Err(Error::BadParameter("delta must be positive"));
        }
        let q = n.div_ceil(delta);
        let mut detectors = Vec::with_capacity(q);
        for j in 0..q {
            let block: Vec<Vertex> = (j * delta..((j + 1) * delta).min(n)).collect();
            let det_seed = seed.wrapping_add(1 + j as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
            detectors.push(LayeredDetector::new(&g, &block, det_seed, counters.clone())?);
        }
        let inner = DagPath::new(g, seed, counters)?;
        Ok(DagTree { inner, delta, detectors })
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn graph(&self) -> &DiGraph {
        self.inner.graph()
    }

    pub fn paths(&self) -> &DagPath {
        &self.inner
    }

    pub fn detectors(&self) -> &[LayeredDetector] {
        &self.detectors
    }

    pub fn insert(&mut self, u: Vertex, v: Vertex, w: Option<f64>) -> Result<Option<Rewrite>> {
        let rw = self.inner.insert(u, v, w)?;
        for d in &mut self.detectors {
            d.insert_edge(u, v)?;
        }
        Ok(rw)
    }

    pub fn delete(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.inner.delete(u, v)?;
        for d in &mut self.detectors {
            d.delete_edge(u, v)?;
        }
        Ok(())
    }

    fn rebuild(&mut self) -> Result<()> {
        self.inner.rebuild()?;
        for d in &mut self.detectors {
            d.rebuild()?;
        }
        Ok(())
    }

    /// Out-tree on the vertices reachable from `s`, as `(parent, child)`
    /// edges sorted by child. Each child hangs off its minimum-id
    /// in-neighbour among the reachable vertices.
    pub fn tree(&mut self, s: Vertex) -> Result<Vec<(Vertex, Vertex)>> {
        self.graph().check_vertex(s)?;
        match self.try_tree(s) {
            Err(Error::InternalInconsistency(_)) => {
                self.rebuild()?;
                self.try_tree(s)
            }
            other => other,
        }
    }

    fn try_tree(&self, s: Vertex) -> Result<Vec<(Vertex, Vertex)>> {
        let g = self.graph();
        let n = g.n();
        let reach: Vec<bool> = (0..n).map(|t| self.inner.reaches(s, t)).collect();
        let mut edges = Vec::new();
        for t in (0..n).filter(|&t| t != s && reach[t]) {
            let j = (0..self.detectors.len())
                .find(|&j| self.detectors[j].detects(s, t))
                .ok_or(Error::InternalInconsistency("no detector fires for a reachable vertex"))?;
            let lo = j * self.delta;
            let hi = lo + self.delta;
            let tail = g
                .inn(t)
                .iter()
                .copied()
                .find(|&p| p >= lo && p < hi && reach[p])
                .ok_or(Error::InternalInconsistency("firing detector has no reachable tail"))?;
            edges.push((tail, t));
        }
        Ok(edges)
    }
}

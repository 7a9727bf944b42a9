use alloc::collections::{BTreeSet, VecDeque};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::partition::PartitionResult;
use super::phase::PhaseCore;
use crate::counters::Counters;
use crate::dag::LayeredDetector;
use crate::decscc::Split;
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Vertex};

/// Fully dynamic single-source reachability trees.
///
/// Labels of `g-` components are split into blocks of width `delta`. A
/// component whose label interval fits inside one block is added to that
/// block's detector set `Y`; the others are *special* and are handled through
/// explicit condensation edges. Detector sets only grow within a phase.
#[derive(Debug, Clone)]
pub struct FdTree {
    core: PhaseCore,
    delta: usize,
    detectors: Vec<LayeredDetector>,
    seed: u64,
    counters: Arc<Counters>,
}

impl FdTree {
    pub fn new(g: DiGraph, phase_len: usize, delta: usize, seed: u64, counters: Arc<Counters>) -> Result<Self> {
        if delta == 0 {
            return Err(Error::BadParameter("delta must be positive"));
        }
        let core = PhaseCore::new(g, phase_len, seed, counters.clone())?;
        let mut t = FdTree { core, delta, detectors: Vec::new(), seed, counters };
        t.rebuild_detectors()?;
        Ok(t)
    }

    pub fn core(&self) -> &PhaseCore {
        &self.core
    }

    pub fn graph(&self) -> &DiGraph {
        self.core.graph()
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn detectors(&self) -> &[LayeredDetector] {
        &self.detectors
    }

    fn block_of(&self, id: usize) -> Option<usize> {
        let (lo, hi) = self.core.dec().interval(id).ok()?;
        (lo / self.delta == hi / self.delta).then_some(lo / self.delta)
    }

    pub fn is_special(&self, id: usize) -> bool {
        self.block_of(id).is_none()
    }

    pub fn special_count(&self) -> usize {
        self.core.dec().ids().filter(|&id| self.is_special(id)).count()
    }

    fn rebuild_detectors(&mut self) -> Result<()> {
        let dec = self.core.dec();
        let n = dec.graph().n();
        let q = n.div_ceil(self.delta);
        let mut ys = vec![Vec::new(); q];
        for id in dec.ids() {
            if let Some(b) = self.block_of(id) {
                ys[b].extend_from_slice(dec.members(id)?);
            }
        }
        let phase = self.core.phase();
        self.detectors = ys
            .iter()
            .enumerate()
            .map(|(j, y)| {
                let seed = super::mix(self.seed, 3 + j as u64, phase);
                LayeredDetector::new(dec.graph(), y, seed, self.counters.clone())
            })
            .collect::<Result<_>>()?;
        Ok(())
    }

    pub fn insert(&mut self, u: Vertex, v: Vertex, w: Option<f64>) -> Result<()> {
        if self.core.insert(u, v, w)? {
            self.rebuild_detectors()?;
        }
        Ok(())
    }

    pub fn delete(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let in_gminus = !self.core.eplus().contains(&(u, v));
        let split = self.core.delete(u, v)?;
        if in_gminus {
            for d in &mut self.detectors {
                d.delete_edge(u, v)?;
            }
        }
        if let Some(split) = split {
            self.on_split(&split)?;
        }
        Ok(())
    }

    fn on_split(&mut self, split: &Split) -> Result<()> {
        for &child in &split.children {
            let Some(b) = self.block_of(child) else { continue };
            let members = self.core.dec().members(child)?.to_vec();
            for m in members {
                debug_assert!(
                    self.detectors.iter().enumerate().all(|(j, d)| j == b || !d.contains(m)),
                    "vertex moved between detector sets"
                );
                self.detectors[b].add_y(m)?;
            }
        }
        Ok(())
    }

    /// Out-tree on every vertex reachable from `s`, as `(parent, child)`
    /// edges sorted by child.
    pub fn tree(&mut self, s: Vertex) -> Result<Vec<(Vertex, Vertex)>> {
        self.graph().check_vertex(s)?;
        match self.try_tree(s) {
            Err(Error::InternalInconsistency(_)) => {
                self.core.rebuild_engines()?;
                for d in &mut self.detectors {
                    d.rebuild()?;
                }
                self.try_tree(s)
            }
            other => other,
        }
    }

    /// Edges of the sparse subgraph `H` whose BFS tree is reported.
    pub fn certificate_edges(&self, part: &PartitionResult) -> Result<BTreeSet<(Vertex, Vertex)>> {
        let dec = self.core.dec();
        let gm = dec.graph();
        let mut h = BTreeSet::new();
        for i in (0..part.sets.len()).filter(|&i| part.in_j[i]) {
            let root = part.root(i);
            if i > 0 {
                h.insert(part.edges[i - 1]);
            }
            // In-edges of t from the first detector block that fires.
            for &t in &part.sets[i] {
                if t == root {
                    continue;
                }
                let Some(j) = self.detectors.iter().position(|d| d.detects(root, t)) else {
                    continue;
                };
                for &y in gm.inn(t) {
                    if self.detectors[j].contains(y) && part.set_of[y] == Some(i) {
                        h.insert((y, t));
                    }
                }
            }
        }
        // Representative edges into and out of special components, and a
        // strongly connected skeleton of every reached component.
        for id in dec.ids() {
            let home = part.set_of[dec.members(id)?[0]];
            if home.is_none() {
                continue;
            }
            if self.is_special(id) {
                for x in dec.cond_in(id) {
                    if part.set_of[dec.members(x)?[0]] == home {
                        h.insert(dec.rep_edge(x, id).expect("condensation edge"));
                    }
                }
                for y in dec.cond_out(id) {
                    if part.set_of[dec.members(y)?[0]] == home {
                        h.insert(dec.rep_edge(id, y).expect("condensation edge"));
                    }
                }
            }
            h.extend(dec.scc_subgraph(id)?);
        }
        Ok(h)
    }

    fn try_tree(&self, s: Vertex) -> Result<Vec<(Vertex, Vertex)>> {
        let part = self.core.partition(s);
        let h = self.certificate_edges(&part)?;
        let n = self.graph().n();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &h {
            adj[a].push(b);
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    parent[b] = Some(a);
                    queue.push_back(b);
                }
            }
        }
        if (0..n).any(|v| seen[v] != part.reaches(v)) {
            return Err(Error::InternalInconsistency("certificate graph misses a reachable vertex"));
        }
        Ok((0..n).filter_map(|c| parent[c].map(|p| (p, c))).collect())
    }
}

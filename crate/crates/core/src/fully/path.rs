use alloc::sync::Arc;
use alloc::vec::Vec;

use super::partition::PartitionResult;
use super::phase::PhaseCore;
use crate::counters::Counters;
use crate::error::{Error, Result};
use crate::graph::{DiGraph, PathWitness, Vertex};

/// Fully dynamic point-to-point path reporting.
#[derive(Debug, Clone)]
pub struct FdPath {
    core: PhaseCore,
}

impl FdPath {
    pub fn new(g: DiGraph, phase_len: usize, seed: u64, counters: Arc<Counters>) -> Result<Self> {
        Ok(FdPath { core: PhaseCore::new(g, phase_len, seed, counters)? })
    }

    pub fn core(&self) -> &PhaseCore {
        &self.core
    }

    pub fn graph(&self) -> &DiGraph {
        self.core.graph()
    }

    pub fn insert(&mut self, u: Vertex, v: Vertex, w: Option<f64>) -> Result<()> {
        self.core.insert(u, v, w).map(|_| ())
    }

    pub fn delete(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.core.delete(u, v).map(|_| ())
    }

    pub fn partition(&self, s: Vertex) -> PartitionResult {
        self.core.partition(s)
    }

    /// Simple `s -> t` path in the current graph, or `None`.
    pub fn path(&mut self, s: Vertex, t: Vertex) -> Result<Option<PathWitness>> {
        self.graph().check_vertex(s)?;
        self.graph().check_vertex(t)?;
        match path_query(&self.core, s, t) {
            Err(Error::InternalInconsistency(_)) => {
                self.core.rebuild_engines()?;
                path_query(&self.core, s, t)
            }
            other => other,
        }
    }
}

pub(crate) fn path_query(core: &PhaseCore, s: Vertex, t: Vertex) -> Result<Option<PathWitness>> {
    if s == t {
        return Ok(Some(PathWitness::trivial(s)));
    }
    let part = core.partition(s);
    let Some(last) = part.set_of[t] else {
        return Ok(None);
    };
    let chain = part.chain(last);
    let mut vertices = Vec::new();
    for (i, &set) in chain.iter().enumerate() {
        let from = part.root(set);
        let to = match chain.get(i + 1) {
            Some(&next) => part.edges[next - 1].0,
            None => t,
        };
        let leg = leg_path(core, from, to)?;
        vertices.extend(leg);
    }
    core.graph()
        .witness(vertices)
        .map(Some)
        .ok_or(Error::InternalInconsistency("assembled path uses a missing edge"))
}

/// A `from -> to` path in `g-`, found by scanning the condensation forward
/// in label order and lifting through representative edges.
fn leg_path(core: &PhaseCore, from: Vertex, to: Vertex) -> Result<Vec<Vertex>> {
    let dec = core.dec();
    let target = dec.comp_of(to);
    let target_label = dec.label(target)?;
    let mut comps = alloc::vec![dec.comp_of(from)];
    while *comps.last().expect("nonempty") != target {
        let cur = *comps.last().expect("nonempty");
        let mut cands: Vec<(usize, usize)> = dec
            .cond_out(cur)
            .filter_map(|y| dec.label(y).ok().filter(|&l| l <= target_label).map(|l| (l, y)))
            .collect();
        cands.sort_unstable();
        let next = cands
            .into_iter()
            .map(|(_, y)| y)
            .find(|&y| y == target || core.q().reaches(dec.members(y).expect("live")[0], to))
            .ok_or(Error::InternalInconsistency("condensation scan found no successor"))?;
        comps.push(next);
    }
    let mut out = Vec::new();
    let mut entry = from;
    for pair in comps.windows(2) {
        let (a, b) = dec.rep_edge(pair[0], pair[1]).expect("scanned along a condensation edge");
        out.extend(dec.path_in_scc(entry, a)?.vertices);
        entry = b;
    }
    out.extend(dec.path_in_scc(entry, to)?.vertices);
    Ok(out)
}

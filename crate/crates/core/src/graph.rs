//! Mutable directed graph used as ground truth by every structure.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Directed graph on a fixed vertex set `0..n`.
///
/// Adjacency lists are kept sorted by vertex id, so applying an update and
/// then its inverse restores an identical structure. Unweighted graphs have
/// cap 1 and every edge weighs 1.
#[derive(Debug, Clone, PartialEq)]
pub struct DiGraph {
    n: usize,
    out: Vec<Vec<Vertex>>,
    inn: Vec<Vec<Vertex>>,
    weights: BTreeMap<(Vertex, Vertex), f64>,
    cap: f64,
    weighted: bool,
    allow_self_loops: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum UpdateEvent {
    InsertEdge { u: Vertex, v: Vertex, w: Option<f64> },
    DeleteEdge { u: Vertex, v: Vertex },
    /// Insert several edges sharing the head `v`.
    InsertIncoming { v: Vertex, tails: Vec<(Vertex, Option<f64>)> },
}

/// A walk `v0 .. vk` with its total weight (hop count when unweighted).
#[derive(Debug, Clone, PartialEq)]
pub struct PathWitness {
    pub vertices: Vec<Vertex>,
    pub total_weight: f64,
}

impl PathWitness {
    pub fn trivial(v: Vertex) -> Self {
        PathWitness { vertices: alloc::vec![v], total_weight: 0.0 }
    }

    pub fn hops(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen: Vec<Vertex> = self.vertices.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

impl DiGraph {
    pub fn new(n: usize) -> Self {
        DiGraph {
            n,
            out: alloc::vec![Vec::new(); n],
            inn: alloc::vec![Vec::new(); n],
            weights: BTreeMap::new(),
            cap: 1.0,
            weighted: false,
            allow_self_loops: false,
        }
    }

    /// Weighted graph with weights restricted to `[1, cap]`.
    pub fn new_weighted(n: usize, cap: f64) -> Result<Self> {
        if cap.is_nan() || cap < 1.0 || !cap.is_finite() {
            return Err(Error::BadParameter("weight cap must be a finite number >= 1"));
        }
        let mut g = DiGraph::new(n);
        g.cap = cap;
        g.weighted = true;
        Ok(g)
    }

    pub fn allowing_self_loops(mut self) -> Self {
        self.allow_self_loops = true;
        self
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = DiGraph::new(n);
        for &(u, v) in edges {
            g.insert_edge(u, v, None)?;
        }
        Ok(g)
    }

    /// Same vertex set, weight mode and cap, no edges.
    pub fn empty_like(&self) -> Self {
        let mut g = DiGraph::new(self.n);
        g.cap = self.cap;
        g.weighted = self.weighted;
        g.allow_self_loops = self.allow_self_loops;
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.weights.len()
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn out(&self, u: Vertex) -> &[Vertex] {
        &self.out[u]
    }

    pub fn inn(&self, v: Vertex) -> &[Vertex] {
        &self.inn[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.weights.contains_key(&(u, v))
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<f64> {
        self.weights.get(&(u, v)).copied()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.weights.keys().copied()
    }

    pub fn weighted_edges(&self) -> impl Iterator<Item = (Vertex, Vertex, f64)> + '_ {
        self.weights.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    fn resolve_weight(&self, w: Option<f64>) -> Result<f64> {
        let w = w.unwrap_or(1.0);
        if !(w >= 1.0 && w <= self.cap) {
            return Err(Error::WeightOutOfRange { weight: w, cap: self.cap });
        }
        Ok(w)
    }

    fn check_insert(&self, u: Vertex, v: Vertex, w: Option<f64>) -> Result<f64> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v && !self.allow_self_loops {
            return Err(Error::SelfLoop { v });
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge { u, v });
        }
        self.resolve_weight(w)
    }

    fn link(&mut self, u: Vertex, v: Vertex, w: f64) {
        let pos = self.out[u].binary_search(&v).unwrap_err();
        self.out[u].insert(pos, v);
        let pos = self.inn[v].binary_search(&u).unwrap_err();
        self.inn[v].insert(pos, u);
        self.weights.insert((u, v), w);
    }

    pub fn insert_edge(&mut self, u: Vertex, v: Vertex, w: Option<f64>) -> Result<()> {
        let w = self.check_insert(u, v, w)?;
        self.link(u, v, w);
        Ok(())
    }

    /// Removes `u -> v` and returns its weight.
    pub fn delete_edge(&mut self, u: Vertex, v: Vertex) -> Result<f64> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let w = self.weights.remove(&(u, v)).ok_or(Error::MissingEdge { u, v })?;
        let pos = self.out[u].binary_search(&v).expect("adjacency out of sync");
        self.out[u].remove(pos);
        let pos = self.inn[v].binary_search(&u).expect("adjacency out of sync");
        self.inn[v].remove(pos);
        Ok(w)
    }

    /// Inserts every `(tail, v)` edge, or none of them if any is invalid.
    pub fn insert_incoming(&mut self, v: Vertex, tails: &[(Vertex, Option<f64>)]) -> Result<()> {
        self.check_vertex(v)?;
        let mut resolved = Vec::with_capacity(tails.len());
        for (i, &(u, w)) in tails.iter().enumerate() {
            if tails[..i].iter().any(|&(x, _)| x == u) {
                return Err(Error::DuplicateTail { v, tail: u });
            }
            resolved.push((u, self.check_insert(u, v, w)?));
        }
        for (u, w) in resolved {
            self.link(u, v, w);
        }
        Ok(())
    }

    pub fn apply_update(&mut self, e: &UpdateEvent) -> Result<()> {
        match e {
            UpdateEvent::InsertEdge { u, v, w } => self.insert_edge(*u, *v, *w),
            UpdateEvent::DeleteEdge { u, v } => self.delete_edge(*u, *v).map(|_| ()),
            UpdateEvent::InsertIncoming { v, tails } => self.insert_incoming(*v, tails),
        }
    }

    /// Sum of edge weights along `vertices`, or `None` if some hop is missing.
    pub fn walk_weight(&self, vertices: &[Vertex]) -> Option<f64> {
        let mut total = 0.0;
        for pair in vertices.windows(2) {
            total += self.weight(pair[0], pair[1])?;
        }
        Some(total)
    }

    /// Builds a witness for `vertices`, which must be a walk in this graph.
    pub fn witness(&self, vertices: Vec<Vertex>) -> Option<PathWitness> {
        let total_weight = self.walk_weight(&vertices)?;
        Some(PathWitness { vertices, total_weight })
    }

    /// Edge-reversed copy.
    pub fn reversed(&self) -> DiGraph {
        let mut r = self.empty_like();
        for (u, v, w) in self.weighted_edges() {
            r.link(v, u, w);
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_insert_and_delete() {
        let mut g = DiGraph::new(3);
        g.apply_update(&UpdateEvent::InsertEdge { u: 0, v: 1, w: None }).unwrap();
        assert!(g.has_edge(0, 1));
        g.insert_edge(1, 2, None).unwrap();
        g.apply_update(&UpdateEvent::DeleteEdge { u: 0, v: 1 }).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), alloc::vec![(1, 2)]);
    }

    #[test]
    fn precondition_violations() {
        let mut g = DiGraph::new(3);
        g.insert_edge(0, 1, None).unwrap();
        assert_eq!(g.insert_edge(0, 1, None), Err(Error::DuplicateEdge { u: 0, v: 1 }));
        assert_eq!(g.delete_edge(1, 0), Err(Error::MissingEdge { u: 1, v: 0 }));
        assert_eq!(g.insert_edge(2, 2, None), Err(Error::SelfLoop { v: 2 }));
        assert!(matches!(g.insert_edge(0, 2, Some(2.0)), Err(Error::WeightOutOfRange { .. })));
        assert!(matches!(g.insert_edge(0, 5, None), Err(Error::VertexOutOfRange { .. })));
        let mut w = DiGraph::new_weighted(3, 4.0).unwrap();
        assert!(matches!(w.insert_edge(0, 1, Some(0.5)), Err(Error::WeightOutOfRange { .. })));
        w.insert_edge(0, 1, Some(3.5)).unwrap();
        assert_eq!(w.weight(0, 1), Some(3.5));
    }

    #[test]
    fn incoming_batch_is_atomic() {
        let mut g = DiGraph::new(4);
        g.insert_edge(2, 3, None).unwrap();
        let before = g.clone();
        let err = g.insert_incoming(3, &[(0, None), (2, None)]).unwrap_err();
        assert_eq!(err, Error::DuplicateEdge { u: 2, v: 3 });
        assert_eq!(g, before);
        let err = g.insert_incoming(3, &[(0, None), (0, None)]).unwrap_err();
        assert_eq!(err, Error::DuplicateTail { v: 3, tail: 0 });
        g.insert_incoming(3, &[(1, None), (0, None)]).unwrap();
        assert_eq!(g.inn(3), &[0, 1, 2]);
    }

    #[test]
    fn self_loops_on_request() {
        let mut g = DiGraph::new(2).allowing_self_loops();
        g.insert_edge(1, 1, None).unwrap();
        assert!(g.has_edge(1, 1));
    }
}

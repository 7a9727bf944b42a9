use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::exact::IncExact;
use super::reach_path::IncPath;
use crate::error::{Error, Result};
use crate::graph::{DiGraph, PathWitness, UpdateEvent, Vertex};

/// An incremental structure the offline driver can replay.
pub trait OfflineTarget {
    type Query;
    type Answer;
    fn mark(&mut self);
    fn rollback(&mut self) -> Result<()>;
    fn insert(&mut self, u: Vertex, v: Vertex, w: Option<f64>) -> Result<()>;
    fn answer(&mut self, q: &Self::Query) -> Result<Self::Answer>;
}

type Interval = (usize, usize, Vertex, Vertex, Option<f64>);

/// Answers queries against versions of a fully dynamic timeline using only
/// insertions and rollback.
///
/// Version `0` is `initial`; version `i` follows `updates[i-1]`. Each edge's
/// presence intervals are placed on a segment tree over versions; a DFS
/// inserts a node's edges on entry and rolls them back on exit, answering
/// the queries of each version at its leaf. Edges present throughout are
/// given to `build` up front. Answers come back in the order of `queries`.
pub fn offline_run<T: OfflineTarget>(
    initial: &DiGraph,
    updates: &[UpdateEvent],
    queries: &[(usize, T::Query)],
    build: impl FnOnce(DiGraph) -> Result<T>,
) -> Result<Vec<T::Answer>> {
    let last = updates.len();
    if queries.iter().any(|(v, _)| *v > last) {
        return Err(Error::BadParameter("query tagged to a version past the timeline"));
    }
    let weight_of = |g: &DiGraph, u, v| g.is_weighted().then(|| g.weight(u, v).expect("present"));
    let mut g = initial.clone();
    let mut open: BTreeMap<(Vertex, Vertex), (usize, Option<f64>)> =
        g.edges().map(|(u, v)| ((u, v), (0, weight_of(&g, u, v)))).collect();
    let mut intervals: Vec<Interval> = Vec::new();
    for (i, e) in updates.iter().enumerate() {
        let version = i + 1;
        g.apply_update(e)?;
        match e {
            UpdateEvent::InsertEdge { u, v, .. } => {
                open.insert((*u, *v), (version, weight_of(&g, *u, *v)));
            }
            UpdateEvent::InsertIncoming { v, tails } => {
                for &(u, _) in tails {
                    open.insert((u, *v), (version, weight_of(&g, u, *v)));
                }
            }
            UpdateEvent::DeleteEdge { u, v } => {
                let (start, w) = open.remove(&(*u, *v)).expect("graph accepted the delete");
                intervals.push((start, version - 1, *u, *v, w));
            }
        }
    }
    let mut base = initial.empty_like();
    for ((u, v), (start, w)) in open {
        if start == 0 {
            base.insert_edge(u, v, w)?;
        } else {
            intervals.push((start, last, u, v, w));
        }
    }

    let versions = last + 1;
    let mut nodes: Vec<Vec<(Vertex, Vertex, Option<f64>)>> = vec![Vec::new(); 4 * versions];
    for &(a, b, u, v, w) in &intervals {
        place(&mut nodes, 1, 0, versions - 1, a, b, (u, v, w));
    }
    let mut by_version: Vec<Vec<usize>> = vec![Vec::new(); versions];
    for (idx, (v, _)) in queries.iter().enumerate() {
        by_version[*v].push(idx);
    }
    let mut target = build(base)?;
    let mut answers: Vec<Option<T::Answer>> = queries.iter().map(|_| None).collect();
    visit(&mut target, &nodes, 1, 0, versions - 1, &by_version, queries, &mut answers)?;
    Ok(answers.into_iter().map(|a| a.expect("every version visited")).collect())
}

fn place<E: Clone>(nodes: &mut [Vec<E>], node: usize, lo: usize, hi: usize, a: usize, b: usize, e: E) {
    if b < lo || hi < a {
        return;
    }
    if a <= lo && hi <= b {
        nodes[node].push(e);
        return;
    }
    let mid = (lo + hi) / 2;
    place(nodes, 2 * node, lo, mid, a, b, e.clone());
    place(nodes, 2 * node + 1, mid + 1, hi, a, b, e);
}

#[allow(clippy::too_many_arguments)]
fn visit<T: OfflineTarget>(
    target: &mut T,
    nodes: &[Vec<(Vertex, Vertex, Option<f64>)>],
    node: usize,
    lo: usize,
    hi: usize,
    by_version: &[Vec<usize>],
    queries: &[(usize, T::Query)],
    answers: &mut [Option<T::Answer>],
) -> Result<()> {
    target.mark();
    for &(u, v, w) in &nodes[node] {
        target.insert(u, v, w)?;
    }
    if lo == hi {
        for &idx in &by_version[lo] {
            answers[idx] = Some(target.answer(&queries[idx].1)?);
        }
    } else {
        let mid = (lo + hi) / 2;
        visit(target, nodes, 2 * node, lo, mid, by_version, queries, answers)?;
        visit(target, nodes, 2 * node + 1, mid + 1, hi, by_version, queries, answers)?;
    }
    target.rollback()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OfflineQuery {
    Path(Vertex, Vertex),
    Dist(Vertex, Vertex),
}

#[derive(Debug, Clone, PartialEq)]
pub enum OfflineAnswer {
    Path(Option<PathWitness>),
    Dist(Option<usize>),
}

/// Path queries through [`IncPath`]; distance queries through [`IncExact`]
/// (unweighted graphs only).
#[derive(Debug, Clone)]
pub struct OfflineEngine {
    path: IncPath,
    exact: Option<IncExact>,
}

impl OfflineEngine {
    pub fn new(g: DiGraph, phase_len: usize) -> Result<Self> {
        let exact = if g.is_weighted() { None } else { Some(IncExact::new(g.clone(), phase_len)?) };
        Ok(OfflineEngine { path: IncPath::new(g, phase_len)?, exact })
    }
}

impl OfflineTarget for OfflineEngine {
    type Query = OfflineQuery;
    type Answer = OfflineAnswer;

    fn mark(&mut self) {
        self.path.mark();
        if let Some(e) = &mut self.exact {
            e.mark();
        }
    }

    fn rollback(&mut self) -> Result<()> {
        self.path.rollback()?;
        if let Some(e) = &mut self.exact {
            e.rollback()?;
        }
        Ok(())
    }

    fn insert(&mut self, u: Vertex, v: Vertex, w: Option<f64>) -> Result<()> {
        self.path.insert_weighted(u, v, w)?;
        if let Some(e) = &mut self.exact {
            e.insert(u, v)?;
        }
        Ok(())
    }

    fn answer(&mut self, q: &OfflineQuery) -> Result<OfflineAnswer> {
        match *q {
            OfflineQuery::Path(s, t) => Ok(OfflineAnswer::Path(self.path.path(s, t)?.map(|p| p.to_witness()))),
            OfflineQuery::Dist(s, t) => match &self.exact {
                Some(e) => Ok(OfflineAnswer::Dist(e.dist(s, t)?)),
                None => Err(Error::Unsupported("offline distances need an unweighted graph")),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_dist, oracle_reach};

    #[test]
    fn insert_delete_reinsert() {
        let g = DiGraph::new(2);
        let updates = [
            UpdateEvent::InsertEdge { u: 0, v: 1, w: None },
            UpdateEvent::DeleteEdge { u: 0, v: 1 },
            UpdateEvent::InsertEdge { u: 0, v: 1, w: None },
        ];
        let queries: Vec<_> = (0..4).map(|v| (v, OfflineQuery::Dist(0, 1))).collect();
        let out = offline_run(&g, &updates, &queries, |g| OfflineEngine::new(g, 1)).unwrap();
        let want = [None, Some(1), None, Some(1)];
        for (a, w) in out.iter().zip(want) {
            assert_eq!(a, &OfflineAnswer::Dist(w));
        }
    }

    #[test]
    fn matches_per_version_oracle() {
        let n = 6;
        let mut g = DiGraph::new(n);
        let mut seed = 99u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            (seed >> 33) as usize
        };
        let mut updates = Vec::new();
        let mut versions = vec![g.clone()];
        while updates.len() < 30 {
            let (u, v) = (next() % n, next() % n);
            if u == v {
                continue;
            }
            let e = if g.has_edge(u, v) {
                UpdateEvent::DeleteEdge { u, v }
            } else {
                UpdateEvent::InsertEdge { u, v, w: None }
            };
            g.apply_update(&e).unwrap();
            updates.push(e);
            versions.push(g.clone());
        }
        let mut queries = Vec::new();
        for ver in 0..versions.len() {
            for s in 0..n {
                for t in 0..n {
                    queries.push((ver, OfflineQuery::Path(s, t)));
                    queries.push((ver, OfflineQuery::Dist(s, t)));
                }
            }
        }
        let out = offline_run(&DiGraph::new(n), &updates, &queries, |g| OfflineEngine::new(g, 2)).unwrap();
        for ((ver, q), a) in queries.iter().zip(&out) {
            let gv = &versions[*ver];
            match (q, a) {
                (OfflineQuery::Path(s, t), OfflineAnswer::Path(p)) => {
                    assert_eq!(p.is_some(), oracle_reach(gv, *s, *t));
                }
                (OfflineQuery::Dist(s, t), OfflineAnswer::Dist(d)) => {
                    let want = oracle_dist(gv, *s).0[*t];
                    assert_eq!(d.map(|x| x as f64).unwrap_or(f64::INFINITY), want);
                }
                _ => unreachable!(),
            }
        }
    }
}

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::catpath::CatPath;
use super::dist_matrix::{recompute_with, DistPathMatrix};
use super::reach_tree::bfs_tree;
use super::Snapshots;
use crate::algebra::{greedy_hitting_set, minplus_bounded};
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Vertex};

#[derive(Debug, Clone, PartialEq)]
struct State {
    g: DiGraph,
    /// Exact distances at most `h` at phase start, with paths.
    matrix: Arc<DistPathMatrix>,
    /// Hits every stored path with exactly `h` hops (minus its first vertex).
    hitting: Arc<Vec<Vertex>>,
    eplus: Vec<(Vertex, Vertex)>,
    heads: Vec<Vertex>,
    events: usize,
}

/// Tree edges plus the hop depth of every vertex (`None` if unreachable).
pub type ExactTree = (Vec<(Vertex, Vertex)>, Vec<Option<usize>>);

/// Adjacency of the auxiliary graph plus the path behind each of its edges.
type Auxiliary = (Vec<Vec<(Vertex, u64, usize)>>, Vec<CatPath>);

/// Incremental exact shortest paths on unweighted graphs.
///
/// Distances up to `h = ⌈n/F⌉` are kept with paths, recomputed at every
/// phase boundary with bounded min-plus products. Longer distances are
/// assembled at query time through a hitting set of the stored paths with
/// exactly `h` hops.
#[derive(Debug, Clone)]
pub struct IncExact {
    state: State,
    phase_len: usize,
    h: usize,
    marks: Snapshots<State>,
}

fn hitting_set(m: &DistPathMatrix, h: usize) -> Vec<Vertex> {
    let n = m.n();
    let mut suffixes = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if m.get(s, t) == h as f64 {
                let vs = m.path(s, t).expect("finite entry").vertices();
                suffixes.push(vs[1..].to_vec());
            }
        }
    }
    greedy_hitting_set(&suffixes, n)
}

/// Dijkstra over a small weighted edge list; returns distance and parent
/// edge index per vertex.
fn dijkstra(n: usize, adj: &[Vec<(Vertex, u64, usize)>], s: Vertex) -> (Vec<u64>, Vec<Option<usize>>) {
    let mut dist = vec![u64::MAX; n];
    let mut via = vec![None; n];
    dist[s] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, s))]);
    while let Some(Reverse((d, a))) = heap.pop() {
        if d > dist[a] {
            continue;
        }
        for &(b, w, idx) in &adj[a] {
            let nd = d + w;
            if nd < dist[b] {
                dist[b] = nd;
                via[b] = Some(idx);
                heap.push(Reverse((nd, b)));
            }
        }
    }
    (dist, via)
}

impl IncExact {
    pub fn new(g: DiGraph, phase_len: usize) -> Result<Self> {
        if g.is_weighted() {
            return Err(Error::Unsupported("exact distances need an unweighted graph"));
        }
        if phase_len == 0 {
            return Err(Error::BadParameter("phase length must be positive"));
        }
        let h = g.n().div_ceil(phase_len).max(1);
        let matrix = DistPathMatrix::exact(&g, h as f64);
        let hitting = Arc::new(hitting_set(&matrix, h));
        Ok(IncExact {
            state: State {
                g,
                matrix: Arc::new(matrix),
                hitting,
                eplus: Vec::new(),
                heads: Vec::new(),
                events: 0,
            },
            phase_len,
            h,
            marks: Snapshots::default(),
        })
    }

    pub fn graph(&self) -> &DiGraph {
        &self.state.g
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn matrix(&self) -> &DistPathMatrix {
        &self.state.matrix
    }

    pub fn hitting(&self) -> &[Vertex] {
        &self.state.hitting
    }

    /// Heads of the edges inserted in the current phase.
    pub fn heads(&self) -> &[Vertex] {
        &self.state.heads
    }

    pub fn insert(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.insert_incoming(v, &[u])
    }

    pub fn insert_incoming(&mut self, v: Vertex, tails: &[Vertex]) -> Result<()> {
        let batch: Vec<_> = tails.iter().map(|&u| (u, None)).collect();
        let st = &mut self.state;
        st.g.insert_incoming(v, &batch)?;
        st.eplus.extend(tails.iter().map(|&u| (u, v)));
        if !st.heads.contains(&v) {
            st.heads.push(v);
        }
        st.events += 1;
        if st.events == self.phase_len {
            self.rebuild()?;
        }
        Ok(())
    }

    fn rebuild(&mut self) -> Result<()> {
        let st = &mut self.state;
        let edges: Vec<_> = st.eplus.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        let h = self.h as u64;
        let (matrix, _) = recompute_with(&st.matrix, &edges, |a, b| minplus_bounded(a, b, h))?;
        st.hitting = Arc::new(hitting_set(&matrix, self.h));
        st.matrix = Arc::new(matrix);
        st.eplus.clear();
        st.heads.clear();
        st.events = 0;
        Ok(())
    }

    /// Builds the auxiliary graph on `vertices` (local ids) with stored
    /// paths from each vertex of `sources` and the phase edges. Returns local
    /// adjacency and the path behind every edge.
    fn auxiliary(&self, vertices: &[Vertex], sources: &[Vertex]) -> Auxiliary {
        let st = &self.state;
        let local: BTreeMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut paths = Vec::new();
        for &a in sources {
            for &b in vertices {
                if a != b && st.matrix.get(a, b).is_finite() {
                    adj[local[&a]].push((local[&b], st.matrix.get(a, b) as u64, paths.len()));
                    paths.push(st.matrix.path(a, b).expect("finite").clone());
                }
            }
        }
        for &(u, v) in &st.eplus {
            adj[local[&u]].push((local[&v], 1, paths.len()));
            paths.push(CatPath::edge(u, v, 1.0));
        }
        (adj, paths)
    }

    /// Exact distance with a shortest path, or `None` when unreachable.
    pub fn path(&self, s: Vertex, t: Vertex) -> Result<Option<(usize, CatPath)>> {
        let st = &self.state;
        st.g.check_vertex(s)?;
        st.g.check_vertex(t)?;
        let mut vertices: Vec<Vertex> = [s, t].into_iter().chain(st.hitting.iter().copied()).collect();
        vertices.extend(st.eplus.iter().flat_map(|&(u, v)| [u, v]));
        vertices.sort_unstable();
        vertices.dedup();
        let (adj, paths) = self.auxiliary(&vertices, &vertices);
        let at = |v: Vertex| vertices.binary_search(&v).expect("present");
        let (dist, via) = dijkstra(vertices.len(), &adj, at(s));
        let lt = at(t);
        if dist[lt] == u64::MAX {
            return Ok(None);
        }
        let mut pieces = Vec::new();
        let mut cur = t;
        while cur != s {
            let p = &paths[via[at(cur)].expect("reached")];
            cur = p.start();
            pieces.push(p);
        }
        let mut out = CatPath::empty(s);
        for p in pieces.into_iter().rev() {
            out = out.concat(p)?;
        }
        debug_assert_eq!(out.hops() as u64, dist[lt]);
        Ok(Some((dist[lt] as usize, out)))
    }

    pub fn dist(&self, s: Vertex, t: Vertex) -> Result<Option<usize>> {
        Ok(self.path(s, t)?.map(|(d, _)| d))
    }

    /// Shortest-path out-tree from `s` as `(parent, child)` edges sorted by
    /// child, plus the distance of every vertex (`None` if unreachable).
    pub fn tree(&self, s: Vertex) -> Result<ExactTree> {
        let st = &self.state;
        st.g.check_vertex(s)?;
        let n = st.g.n();
        let vertices: Vec<Vertex> = (0..n).collect();
        let mut sources: Vec<Vertex> = [s].into_iter().chain(st.hitting.iter().copied()).collect();
        sources.extend(st.heads.iter().copied());
        sources.sort_unstable();
        sources.dedup();
        let (adj, paths) = self.auxiliary(&vertices, &sources);
        let (_, via) = dijkstra(n, &adj, s);
        // Expand the chosen auxiliary edges into original edges and search again.
        let mut sub = vec![Vec::new(); n];
        for idx in via.iter().flatten() {
            for (a, b, _) in paths[*idx].edges() {
                sub[a].push(b);
            }
        }
        for list in &mut sub {
            list.sort_unstable();
            list.dedup();
        }
        let tree = bfs_tree(&sub, s);
        let mut dist = vec![None; n];
        dist[s] = Some(0);
        let mut children = vec![Vec::new(); n];
        for &(p, c) in &tree {
            children[p].push(c);
        }
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            for &c in &children[a] {
                dist[c] = Some(dist[a].expect("parent first") + 1);
                stack.push(c);
            }
        }
        Ok((tree, dist))
    }

    pub fn mark(&mut self) {
        self.marks.push(&self.state);
    }

    pub fn rollback(&mut self) -> Result<()> {
        self.state = self.marks.pop()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_dist;

    fn check_all(e: &IncExact) {
        let n = e.graph().n();
        for s in 0..n {
            let (bfs, _) = oracle_dist(e.graph(), s);
            let (_, tdist) = e.tree(s).unwrap();
            for t in 0..n {
                let got = e.dist(s, t).unwrap();
                let want = bfs[t].is_finite().then_some(bfs[t] as usize);
                assert_eq!(got, want, "pair {s}->{t}");
                assert_eq!(tdist[t], want, "tree {s}->{t}");
            }
        }
    }

    #[test]
    fn long_chain_beyond_h() {
        let n = 12;
        let mut e = IncExact::new(DiGraph::new(n), 4).unwrap();
        assert_eq!(e.h(), 3);
        for v in 0..n - 1 {
            e.insert(v, v + 1).unwrap();
            check_all(&e);
        }
        assert!(!e.hitting().is_empty());
    }

    #[test]
    fn h_at_least_n_gives_apsp_without_hitting_set() {
        let g = DiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let e = IncExact::new(g, 1).unwrap();
        assert!(e.hitting().is_empty());
        check_all(&e);
    }

    #[test]
    fn weighted_rejected() {
        assert!(matches!(IncExact::new(DiGraph::new_weighted(3, 2.0).unwrap(), 1), Err(Error::Unsupported(_))));
    }
}

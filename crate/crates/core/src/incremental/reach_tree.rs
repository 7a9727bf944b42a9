use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::trees::Trees;
use super::Snapshots;
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Vertex};

#[derive(Debug, Clone, PartialEq)]
struct State {
    g: DiGraph,
    trees: Arc<Trees>,
    /// Inserted edges of the current phase.
    eplus: Vec<(Vertex, Vertex)>,
    heads: Vec<Vertex>,
    events: usize,
}

/// Incremental single-source reachability trees under insertions of
/// incoming edge batches.
#[derive(Debug, Clone)]
pub struct IncTree {
    state: State,
    phase_len: usize,
    marks: Snapshots<State>,
}

impl IncTree {
    pub fn new(g: DiGraph, phase_len: usize) -> Result<Self> {
        if phase_len == 0 {
            return Err(Error::BadParameter("phase length must be positive"));
        }
        let trees = Arc::new(Trees::from_graph(&g));
        Ok(IncTree {
            state: State { g, trees, eplus: Vec::new(), heads: Vec::new(), events: 0 },
            phase_len,
            marks: Snapshots::default(),
        })
    }

    pub fn graph(&self) -> &DiGraph {
        &self.state.g
    }

    pub fn insert_incoming(&mut self, v: Vertex, tails: &[Vertex]) -> Result<()> {
        let batch: Vec<_> = tails.iter().map(|&u| (u, None)).collect();
        self.insert_incoming_weighted(v, &batch)
    }

    /// Like [`IncTree::insert_incoming`], keeping explicit weights in the graph.
    pub fn insert_incoming_weighted(&mut self, v: Vertex, tails: &[(Vertex, Option<f64>)]) -> Result<()> {
        let st = &mut self.state;
        st.g.insert_incoming(v, tails)?;
        st.eplus.extend(tails.iter().map(|&(u, _)| (u, v)));
        if !st.heads.contains(&v) {
            st.heads.push(v);
        }
        st.events += 1;
        if st.events == self.phase_len {
            st.trees = Arc::new(st.trees.recompute(&st.g, &st.eplus));
            st.eplus.clear();
            st.heads.clear();
            st.events = 0;
        }
        Ok(())
    }

    pub fn insert(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.insert_incoming(v, &[u])
    }

    /// Out-tree of everything `s` reaches, as `(parent, child)` edges sorted
    /// by child: a BFS tree of `T(s)`, the trees of all inserted heads, and
    /// the inserted edges.
    pub fn tree(&self, s: Vertex) -> Result<Vec<(Vertex, Vertex)>> {
        let st = &self.state;
        st.g.check_vertex(s)?;
        let n = st.g.n();
        let mut adj = vec![Vec::new(); n];
        for root in core::iter::once(s).chain(st.heads.iter().copied()) {
            for (p, c) in st.trees.tree_edges(root) {
                adj[p].push(c);
            }
        }
        for &(u, v) in &st.eplus {
            adj[u].push(v);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(bfs_tree(&adj, s))
    }

    pub fn mark(&mut self) {
        self.marks.push(&self.state);
    }

    pub fn rollback(&mut self) -> Result<()> {
        self.state = self.marks.pop()?;
        Ok(())
    }
}

/// BFS parent edges from `s`, sorted by child.
pub(crate) fn bfs_tree(adj: &[Vec<Vertex>], s: Vertex) -> Vec<(Vertex, Vertex)> {
    let n = adj.len();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[s] = true;
    let mut queue = alloc::collections::VecDeque::from([s]);
    while let Some(a) = queue.pop_front() {
        for &b in &adj[a] {
            if !seen[b] {
                seen[b] = true;
                parent[b] = Some(a);
                queue.push_back(b);
            }
        }
    }
    (0..n).filter_map(|c| parent[c].map(|p| (p, c))).collect()
}

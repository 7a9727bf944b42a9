use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Vertex;
use crate::reach::ReachEngine;

/// Partition of the vertices reachable from `s` into `V_{s,0..k}`.
///
/// `V_{s,0}` is what `s` reaches in `g-`; set `i >= 1` belongs to the `i`-th
/// inserted edge `(u_i, v_i)` and holds what `v_i` newly reaches in `g-`. The
/// used indices `J` form an out-tree rooted at 0 through `parent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionResult {
    pub source: Vertex,
    pub sets: Vec<Vec<Vertex>>,
    pub in_j: Vec<bool>,
    pub parent: Vec<Option<usize>>,
    pub set_of: Vec<Option<usize>>,
    /// `edges[i - 1]` is the inserted edge behind set `i`.
    pub edges: Vec<(Vertex, Vertex)>,
}

impl PartitionResult {
    pub fn reaches(&self, t: Vertex) -> bool {
        self.set_of[t].is_some()
    }

    /// Root of set `i`: `s` for 0, otherwise the head `v_i`.
    pub fn root(&self, i: usize) -> Vertex {
        if i == 0 {
            self.source
        } else {
            self.edges[i - 1].1
        }
    }

    /// Set indices from 0 down the tree to `i`.
    pub fn chain(&self, i: usize) -> Vec<usize> {
        let mut chain = vec![i];
        let mut cur = i;
        while let Some(p) = self.parent[cur] {
            chain.push(p);
            cur = p;
        }
        chain.reverse();
        chain
    }

    pub fn union(&self) -> Vec<Vertex> {
        (0..self.set_of.len()).filter(|&v| self.set_of[v].is_some()).collect()
    }
}

/// `q` answers point queries and `d` provides rows, both over `g-`;
/// `eplus` lists the current phase's inserted edges in insertion order.
pub fn partition(s: Vertex, q: &ReachEngine, d: &ReachEngine, eplus: &[(Vertex, Vertex)]) -> PartitionResult {
    let n = q.n();
    let k = eplus.len();
    let mut set_of = vec![None; n];
    let mut sets = vec![Vec::new(); k + 1];
    for w in 0..n {
        if q.reaches(s, w) {
            set_of[w] = Some(0);
            sets[0].push(w);
        }
    }
    let mut in_j = vec![false; k + 1];
    in_j[0] = true;
    let mut parent = vec![None; k + 1];
    loop {
        let next = (1..=k).find(|&i| {
            let (u, v) = eplus[i - 1];
            !in_j[i] && set_of[u].is_some() && set_of[v].is_none()
        });
        let Some(i) = next else { break };
        let (u, v) = eplus[i - 1];
        for (w, r) in d.row(v).into_iter().enumerate() {
            if r && set_of[w].is_none() {
                set_of[w] = Some(i);
                sets[i].push(w);
            }
        }
        in_j[i] = true;
        parent[i] = set_of[u];
    }
    PartitionResult { source: s, sets, in_j, parent, set_of, edges: eplus.to_vec() }
}

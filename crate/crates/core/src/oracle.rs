//! Brute-force ground truth. Deliberately independent of the structures'
//! own algorithms (Kosaraju here, Tarjan there).

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::graph::{DiGraph, PathWitness, Vertex};

/// Relative tolerance for comparing floating path weights.
pub const WEIGHT_TOLERANCE: f64 = 1e-9;

pub fn close(a: f64, b: f64) -> bool {
    if a == b {
        return true;
    }
    (a - b).abs() <= WEIGHT_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// Indicator of vertices reachable from `s` (including `s`).
pub fn reach_set(g: &DiGraph, s: Vertex) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::new();
    seen[s] = true;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        for &v in g.out(u) {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

pub fn oracle_reach(g: &DiGraph, s: Vertex, t: Vertex) -> bool {
    reach_set(g, s)[t]
}

/// Boolean transitive closure by Floyd–Warshall.
pub fn closure(g: &DiGraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut c = vec![vec![false; n]; n];
    for (v, row) in c.iter_mut().enumerate() {
        row[v] = true;
    }
    for (u, v) in g.edges() {
        c[u][v] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if c[i][k] {
                for j in 0..n {
                    if c[k][j] {
                        c[i][j] = true;
                    }
                }
            }
        }
    }
    c
}

/// SCC partition by Kosaraju, labelled by minimum member id.
pub fn oracle_scc(g: &DiGraph) -> Vec<usize> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut finish = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some((u, i)) = stack.pop() {
            if let Some(&v) = g.out(u).get(i) {
                stack.push((u, i + 1));
                if !seen[v] {
                    seen[v] = true;
                    stack.push((v, 0));
                }
            } else {
                finish.push(u);
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    for &root in finish.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        let mut members = vec![root];
        comp[root] = root;
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            i += 1;
            for &v in g.inn(u) {
                if comp[v] == usize::MAX {
                    comp[v] = root;
                    members.push(v);
                }
            }
        }
        let min = *members.iter().min().expect("nonempty class");
        for &v in &members {
            comp[v] = min;
        }
    }
    comp
}

#[derive(Clone, Copy, PartialEq)]
struct HeapItem(f64, Vertex);

impl Eq for HeapItem {}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

/// Single-source distances and parents; BFS if unweighted, Dijkstra otherwise.
pub fn oracle_dist(g: &DiGraph, s: Vertex) -> (Vec<f64>, Vec<Option<Vertex>>) {
    let n = g.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![None; n];
    dist[s] = 0.0;
    if !g.is_weighted() {
        let mut queue = VecDeque::new();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in g.out(u) {
                if dist[v].is_infinite() {
                    dist[v] = dist[u] + 1.0;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        return (dist, parent);
    }
    let mut heap = BinaryHeap::new();
    heap.push(HeapItem(0.0, s));
    let mut done = vec![false; n];
    while let Some(HeapItem(d, u)) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &v in g.out(u) {
            let nd = d + g.weight(u, v).expect("adjacent");
            if nd < dist[v] {
                dist[v] = nd;
                parent[v] = Some(u);
                heap.push(HeapItem(nd, v));
            }
        }
    }
    (dist, parent)
}

/// All-pairs distances by Floyd–Warshall.
pub fn floyd_warshall(g: &DiGraph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0.0;
    }
    for (u, v, w) in g.weighted_edges() {
        d[u][v] = d[u][v].min(w);
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k].is_infinite() {
                continue;
            }
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Follows a parent vector back from `t` to the source.
pub fn path_from_parents(parent: &[Option<Vertex>], s: Vertex, t: Vertex) -> Option<Vec<Vertex>> {
    let mut path = vec![t];
    let mut cur = t;
    while cur != s {
        cur = parent[cur]?;
        path.push(cur);
        if path.len() > parent.len() {
            return None;
        }
    }
    path.reverse();
    Some(path)
}

pub fn verify_path(g: &DiGraph, w: &PathWitness, s: Vertex, t: Vertex, require_simple: bool) -> bool {
    if w.vertices.first() != Some(&s) || w.vertices.last() != Some(&t) {
        return false;
    }
    if w.vertices.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let Some(total) = g.walk_weight(&w.vertices) else {
        return false;
    };
    if !close(total, w.total_weight) {
        return false;
    }
    !require_simple || w.is_simple()
}

/// True iff `edges` is an out-tree rooted at `s` whose vertex set is exactly
/// `expected` and whose edges are all present in `g`.
pub fn verify_out_tree(g: &DiGraph, edges: &[(Vertex, Vertex)], s: Vertex, expected: &[Vertex]) -> bool {
    let n = g.n();
    if s >= n || expected.iter().any(|&v| v >= n) {
        return false;
    }
    let mut want = vec![false; n];
    for &v in expected {
        want[v] = true;
    }
    if !want[s] || expected.len() != want.iter().filter(|&&b| b).count() {
        return false;
    }
    let mut parent = vec![None; n];
    for &(p, c) in edges {
        if p >= n || c >= n || !g.has_edge(p, c) || c == s || parent[c].is_some() {
            return false;
        }
        parent[c] = Some(p);
    }
    let mut children = vec![Vec::new(); n];
    for &(p, c) in edges {
        children[p].push(c);
    }
    let mut seen = vec![false; n];
    seen[s] = true;
    let mut stack = vec![s];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &c in &children[u] {
            if !seen[c] {
                seen[c] = true;
                count += 1;
                stack.push(c);
            }
        }
    }
    // Every edge hangs off the root and the spanned set is exactly `expected`.
    count == edges.len() + 1 && (0..n).all(|v| seen[v] == want[v])
}

/// Vertices reachable from `s`, ascending.
pub fn reachable_vertices(g: &DiGraph, s: Vertex) -> Vec<Vertex> {
    reach_set(g, s)
        .iter()
        .enumerate()
        .filter_map(|(v, &r)| r.then_some(v))
        .collect()
}

//! All-sources reachability trees and their recomputation after a batch of
//! edge insertions.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{bool_product_witness, BoolMatrix};
use crate::graph::{DiGraph, Vertex};
use crate::scc::tarjan;

/// One out-tree per source. `parent[s][v]` is `Some(p)` for every reached
/// `v` (the root points at itself); `order[s]` lists reached vertices with
/// parents before children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trees {
    parent: Vec<Vec<Option<Vertex>>>,
    order: Vec<Vec<Vertex>>,
}

fn bfs(n: usize, s: Vertex, adj: &[Vec<Vertex>]) -> (Vec<Option<Vertex>>, Vec<Vertex>) {
    let mut parent = vec![None; n];
    parent[s] = Some(s);
    let mut order = vec![s];
    let mut i = 0;
    while i < order.len() {
        let a = order[i];
        i += 1;
        for &b in &adj[a] {
            if parent[b].is_none() {
                parent[b] = Some(a);
                order.push(b);
            }
        }
    }
    (parent, order)
}

impl Trees {
    /// BFS trees of `g`.
    pub fn from_graph(g: &DiGraph) -> Self {
        let n = g.n();
        let adj: Vec<Vec<Vertex>> = (0..n).map(|v| g.out(v).to_vec()).collect();
        let (parent, order) = (0..n).map(|s| bfs(n, s, &adj)).unzip();
        Trees { parent, order }
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn reaches(&self, s: Vertex, v: Vertex) -> bool {
        self.parent[s][v].is_some()
    }

    pub fn parent(&self, s: Vertex, v: Vertex) -> Option<Vertex> {
        self.parent[s][v].filter(|_| v != s)
    }

    /// Reached vertices of `T(s)`, parents first.
    pub fn order(&self, s: Vertex) -> &[Vertex] {
        &self.order[s]
    }

    pub fn tree_edges(&self, s: Vertex) -> Vec<(Vertex, Vertex)> {
        self.order[s].iter().skip(1).map(|&v| (self.parent[s][v].expect("reached"), v)).collect()
    }

    /// Trees for `g = g' ∪ new_edges`, where `self` holds trees for `g'`.
    ///
    /// Works on the condensation of `g`. `A[X][Y]` records that some `x` in
    /// `X` reaches some `y` in `Y` in `g'`, possibly finishing with one new
    /// edge; every path of `g` is a chain of such steps whose intermediate
    /// components contain new heads. Closing `A` over those components with
    /// boolean products gives, per source component `C` and target `Y`,
    /// either a direct step or a witness component `w` with a direct step
    /// into `Y`. An old tree from `C` (or `w`) then yields an edge entering
    /// `Y` from a vertex `C` reaches. These entry edges, together with a
    /// BFS in-tree and out-tree inside each component, span everything `C`
    /// reaches; the final trees are BFS trees of that sparse graph.
    pub fn recompute(&self, g: &DiGraph, new_edges: &[(Vertex, Vertex)]) -> Trees {
        let n = g.n();
        let adj: Vec<Vec<Vertex>> = (0..n).map(|v| g.out(v).to_vec()).collect();
        let (comp, k) = tarjan(&adj);
        let mut members = vec![Vec::new(); k];
        for v in 0..n {
            members[comp[v]].push(v);
        }

        // Skeleton of each component: BFS out-tree and in-tree at its minimum.
        let mut skeleton: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); k];
        for (c, mem) in members.iter().enumerate() {
            let root = mem[0];
            for backward in [false, true] {
                let mut seen = vec![false; n];
                seen[root] = true;
                let mut queue = VecDeque::from([root]);
                while let Some(a) = queue.pop_front() {
                    let next = if backward { g.inn(a) } else { g.out(a) };
                    for &b in next {
                        if !seen[b] && comp[b] == c {
                            seen[b] = true;
                            skeleton[c].push(if backward { (b, a) } else { (a, b) });
                            queue.push_back(b);
                        }
                    }
                }
            }
        }

        let mut a = BoolMatrix::new(k, k);
        for x in 0..n {
            let cx = comp[x];
            a.set(cx, cx, true);
            for &y in &self.order[x] {
                a.set(cx, comp[y], true);
            }
            for &(z, y) in new_edges {
                if self.reaches(x, z) {
                    a.set(cx, comp[y], true);
                }
            }
        }

        let mut heads: Vec<usize> = new_edges.iter().map(|&(_, v)| comp[v]).collect();
        heads.sort_unstable();
        heads.dedup();
        let t = heads.len();
        // via[C][Y]: component in T reachable from C with a direct step into Y != itself.
        let mut via: Vec<Vec<Option<usize>>> = vec![vec![None; k]; k];
        if t > 0 {
            let mut a_tt = BoolMatrix::new(t, t);
            let mut a_st = BoolMatrix::new(k, t);
            let mut a_ts = BoolMatrix::new(t, k);
            for (j, &cj) in heads.iter().enumerate() {
                for (i, &ci) in heads.iter().enumerate() {
                    a_tt.set(i, j, a.get(ci, cj));
                }
                for x in 0..k {
                    a_st.set(x, j, a.get(x, cj));
                    a_ts.set(j, x, a.get(cj, x) && cj != x);
                }
            }
            let mut steps = 1;
            while steps < t {
                a_tt = bool_product_witness(&a_tt, &a_tt).expect("square").0;
                steps *= 2;
            }
            let l = bool_product_witness(&a_st, &a_tt).expect("dims agree").0;
            let (r, wit) = bool_product_witness(&l, &a_ts).expect("dims agree");
            for x in 0..k {
                for y in 0..k {
                    if r.get(x, y) {
                        via[x][y] = wit.get(x, y).map(|j| heads[j]);
                    }
                }
            }
        }

        // Edge entering `y_comp` from a vertex reachable from component `from`.
        let entry = |from: usize, y_comp: usize| -> (Vertex, Vertex) {
            for &x in &members[from] {
                for &y in &members[y_comp] {
                    if !self.reaches(x, y) {
                        continue;
                    }
                    let mut cur = y;
                    loop {
                        let p = self.parent[x][cur].expect("on tree path");
                        if comp[p] != y_comp {
                            return (p, cur);
                        }
                        cur = p;
                    }
                }
                for &(z, y) in new_edges {
                    if comp[y] == y_comp && comp[z] != y_comp && self.reaches(x, z) {
                        return (z, y);
                    }
                }
            }
            unreachable!("a direct step must be realized by an old tree or a new edge");
        };

        let mut parent = vec![Vec::new(); n];
        let mut order = vec![Vec::new(); n];
        for c in 0..k {
            let mut h = vec![Vec::new(); n];
            for y in 0..k {
                let step = if y == c || a.get(c, y) {
                    Some(c)
                } else {
                    via[c][y]
                };
                let Some(from) = step else { continue };
                for &(p, q) in &skeleton[y] {
                    h[p].push(q);
                }
                if y != c {
                    let (p, q) = entry(from, y);
                    h[p].push(q);
                }
            }
            for list in &mut h {
                list.sort_unstable();
            }
            for &s in &members[c] {
                let (p, o) = bfs(n, s, &h);
                parent[s] = p;
                order[s] = o;
            }
        }
        Trees { parent, order }
    }
}

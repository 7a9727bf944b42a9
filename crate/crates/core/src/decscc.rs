//! Decremental strongly connected components with nesting topological labels
//! and a condensation carrying representative edges.
//!
//! A deletion inside a component reruns Tarjan on that component only. When
//! it splits, the largest child keeps the parent's id and the children are
//! packed, in topological order, into the parent's label interval. Labels are
//! 0-based: component `C` owns `[label(C), label(C) + |C|)`.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::error::{Error, Result};
use crate::graph::{DiGraph, PathWitness, Vertex};
use crate::scc::tarjan;

/// A component `parent` replaced by `children` (listed in label order; one
/// of them reuses the parent id).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub parent: usize,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Comp {
    members: Vec<Vertex>,
    label: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecScc {
    g: DiGraph,
    comp_of: Vec<usize>,
    comps: Vec<Option<Comp>>,
    /// Original edges behind every condensation edge `(X, Y)`; the smallest
    /// one is the representative.
    cond: BTreeMap<(usize, usize), BTreeSet<(Vertex, Vertex)>>,
    cond_out: Vec<BTreeSet<usize>>,
    cond_in: Vec<BTreeSet<usize>>,
    version: u64,
}

/// Orders groups topologically along the edges of `g` between them, taking
/// the group with the smallest first member among the ready ones.
fn order_groups(g: &DiGraph, groups: &[Vec<Vertex>], group_of: &[usize]) -> Vec<usize> {
    let k = groups.len();
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for (i, grp) in groups.iter().enumerate() {
        for &a in grp {
            for &b in g.out(a) {
                let j = group_of[b];
                if j != usize::MAX && j != i {
                    succ[i].insert(j);
                }
            }
        }
    }
    let mut indeg = vec![0usize; k];
    for s in &succ {
        for &j in s {
            indeg[j] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<(Vertex, usize)>> = (0..k)
        .filter(|&i| indeg[i] == 0)
        .map(|i| Reverse((groups[i][0], i)))
        .collect();
    let mut order = Vec::with_capacity(k);
    while let Some(Reverse((_, i))) = ready.pop() {
        order.push(i);
        for &j in &succ[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                ready.push(Reverse((groups[j][0], j)));
            }
        }
    }
    assert_eq!(order.len(), k, "components of a condensation must be acyclic");
    order
}

impl DecScc {
    pub fn new(g: DiGraph) -> Self {
        let n = g.n();
        let adj: Vec<Vec<Vertex>> = (0..n).map(|v| g.out(v).to_vec()).collect();
        let (lc, k) = tarjan(&adj);
        let mut groups = vec![Vec::new(); k];
        for v in 0..n {
            groups[lc[v]].push(v);
        }
        let order = order_groups(&g, &groups, &lc);
        let mut comp_of = vec![0; n];
        let mut comps = Vec::with_capacity(k);
        let mut cursor = 0;
        for (id, &gi) in order.iter().enumerate() {
            let members = core::mem::take(&mut groups[gi]);
            for &v in &members {
                comp_of[v] = id;
            }
            let len = members.len();
            comps.push(Some(Comp { members, label: cursor }));
            cursor += len;
        }
        let mut s = DecScc {
            g,
            comp_of,
            comps,
            cond: BTreeMap::new(),
            cond_out: vec![BTreeSet::new(); k],
            cond_in: vec![BTreeSet::new(); k],
            version: 0,
        };
        let edges: Vec<_> = s.g.edges().collect();
        for (a, b) in edges {
            s.hang(a, b);
        }
        s
    }

    pub fn graph(&self) -> &DiGraph {
        &self.g
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn comp_of(&self, v: Vertex) -> usize {
        self.comp_of[v]
    }

    fn comp(&self, id: usize) -> Result<&Comp> {
        self.comps.get(id).and_then(Option::as_ref).ok_or(Error::UnknownComponent { id })
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.comps.iter().enumerate().filter_map(|(i, c)| c.as_ref().map(|_| i))
    }

    pub fn count(&self) -> usize {
        self.comps.iter().flatten().count()
    }

    /// Members in ascending id order.
    pub fn members(&self, id: usize) -> Result<&[Vertex]> {
        Ok(&self.comp(id)?.members)
    }

    pub fn size(&self, id: usize) -> Result<usize> {
        Ok(self.comp(id)?.members.len())
    }

    pub fn label(&self, id: usize) -> Result<usize> {
        Ok(self.comp(id)?.label)
    }

    /// Inclusive label interval.
    pub fn interval(&self, id: usize) -> Result<(usize, usize)> {
        let c = self.comp(id)?;
        Ok((c.label, c.label + c.members.len() - 1))
    }

    /// Representative original edge of the condensation edge `x -> y`.
    pub fn rep_edge(&self, x: usize, y: usize) -> Option<(Vertex, Vertex)> {
        self.cond.get(&(x, y)).and_then(|s| s.first().copied())
    }

    pub fn cond_out(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.cond_out.get(x).into_iter().flatten().copied()
    }

    pub fn cond_in(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.cond_in.get(y).into_iter().flatten().copied()
    }

    pub fn cond_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cond.keys().copied()
    }

    /// Partition labelled by minimum member, comparable with the oracle.
    pub fn canonical_labels(&self) -> Vec<usize> {
        self.comp_of
            .iter()
            .map(|&c| self.comps[c].as_ref().expect("live component").members[0])
            .collect()
    }

    fn hang(&mut self, a: Vertex, b: Vertex) {
        let (x, y) = (self.comp_of[a], self.comp_of[b]);
        if x == y {
            return;
        }
        self.cond.entry((x, y)).or_default().insert((a, b));
        self.cond_out[x].insert(y);
        self.cond_in[y].insert(x);
    }

    fn unhang(&mut self, a: Vertex, b: Vertex) {
        let key = (self.comp_of[a], self.comp_of[b]);
        if key.0 == key.1 {
            return;
        }
        if let Some(set) = self.cond.get_mut(&key) {
            set.remove(&(a, b));
            if set.is_empty() {
                self.cond.remove(&key);
                self.cond_out[key.0].remove(&key.1);
                self.cond_in[key.1].remove(&key.0);
            }
        }
    }

    /// Deletes `u -> v`, returning the split it caused, if any.
    pub fn delete(&mut self, u: Vertex, v: Vertex) -> Result<Option<Split>> {
        if !self.g.has_edge(u, v) {
            self.g.check_vertex(u)?;
            self.g.check_vertex(v)?;
            return Err(Error::MissingEdge { u, v });
        }
        self.unhang(u, v);
        self.g.delete_edge(u, v)?;
        let s = self.comp_of[u];
        if self.comp_of[v] != s {
            return Ok(None);
        }
        let parent = self.comps[s].clone().expect("live component");
        let n = self.g.n();
        let mut local = vec![usize::MAX; n];
        for (i, &m) in parent.members.iter().enumerate() {
            local[m] = i;
        }
        let adj: Vec<Vec<usize>> = parent
            .members
            .iter()
            .map(|&a| self.g.out(a).iter().filter(|&&b| local[b] != usize::MAX).map(|&b| local[b]).collect())
            .collect();
        let (lc, k) = tarjan(&adj);
        if k == 1 {
            return Ok(None);
        }
        let mut groups = vec![Vec::new(); k];
        for (i, &m) in parent.members.iter().enumerate() {
            groups[lc[i]].push(m);
        }
        let mut group_of = vec![usize::MAX; n];
        for (gi, grp) in groups.iter().enumerate() {
            for &m in grp {
                group_of[m] = gi;
            }
        }
        let order = order_groups(&self.g, &groups, &group_of);
        let retained = (0..k)
            .max_by(|&a, &b| groups[a].len().cmp(&groups[b].len()).then(groups[b][0].cmp(&groups[a][0])))
            .expect("k >= 2");

        // Detach every edge touching a vertex that leaves the parent id.
        let mut touched = BTreeSet::new();
        for (gi, grp) in groups.iter().enumerate() {
            if gi == retained {
                continue;
            }
            for &a in grp {
                touched.extend(self.g.out(a).iter().map(|&b| (a, b)));
                touched.extend(self.g.inn(a).iter().map(|&b| (b, a)));
            }
        }
        for &(a, b) in &touched {
            self.unhang(a, b);
        }

        let mut cursor = parent.label;
        let mut children = Vec::with_capacity(k);
        for &gi in &order {
            let members = core::mem::take(&mut groups[gi]);
            let size = members.len();
            let id = if gi == retained {
                s
            } else {
                assert!(2 * size <= parent.members.len(), "split child larger than half its parent");
                let id = self.comps.len();
                self.comps.push(None);
                self.cond_out.push(BTreeSet::new());
                self.cond_in.push(BTreeSet::new());
                for &m in &members {
                    self.comp_of[m] = id;
                }
                id
            };
            self.comps[id] = Some(Comp { members, label: cursor });
            cursor += size;
            children.push(id);
        }
        assert_eq!(cursor, parent.label + parent.members.len(), "children must tile the parent interval");

        for &(a, b) in &touched {
            self.hang(a, b);
        }
        self.version += 1;
        Ok(Some(Split { parent: s, children }))
    }

    /// BFS path from `u` to `v` inside their common component.
    pub fn path_in_scc(&self, u: Vertex, v: Vertex) -> Result<PathWitness> {
        self.g.check_vertex(u)?;
        self.g.check_vertex(v)?;
        let c = self.comp_of[u];
        if self.comp_of[v] != c {
            return Err(Error::NotStronglyConnected { u, v });
        }
        if u == v {
            return Ok(PathWitness::trivial(u));
        }
        let parent = self.bfs(c, u, false);
        let mut path = vec![v];
        let mut cur = v;
        while cur != u {
            cur = parent[cur].ok_or(Error::InternalInconsistency("component not strongly connected"))?;
            path.push(cur);
        }
        path.reverse();
        Ok(self.g.witness(path).expect("bfs follows edges"))
    }

    /// BFS parents from `root` inside component `c`, along out-edges or (when
    /// `backward`) in-edges.
    fn bfs(&self, c: usize, root: Vertex, backward: bool) -> Vec<Option<Vertex>> {
        let n = self.g.n();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(a) = queue.pop_front() {
            let next = if backward { self.g.inn(a) } else { self.g.out(a) };
            for &b in next {
                if !seen[b] && self.comp_of[b] == c {
                    seen[b] = true;
                    parent[b] = Some(a);
                    queue.push_back(b);
                }
            }
        }
        parent
    }

    /// Sparse strongly connected spanning subgraph of a component: BFS
    /// out-tree plus BFS in-tree at the minimum member.
    pub fn scc_subgraph(&self, id: usize) -> Result<Vec<(Vertex, Vertex)>> {
        let comp = self.comp(id)?;
        let root = comp.members[0];
        let out = self.bfs(id, root, false);
        let inn = self.bfs(id, root, true);
        let mut edges = BTreeSet::new();
        for &m in &comp.members {
            if let Some(p) = out[m] {
                edges.insert((p, m));
            }
            if let Some(p) = inn[m] {
                edges.insert((m, p));
            }
        }
        Ok(edges.into_iter().collect())
    }

    /// Structural self-check: labels tile `[0, n)`, condensation edges go
    /// forward in label order, representatives are live edges, and the
    /// stored condensation matches the graph.
    pub fn check_invariants(&self) -> core::result::Result<(), &'static str> {
        let n = self.g.n();
        let mut covered = vec![false; n];
        for id in self.ids() {
            let c = self.comps[id].as_ref().expect("live");
            if c.members.is_empty() {
                return Err("empty component");
            }
            if c.members.windows(2).any(|w| w[0] >= w[1]) {
                return Err("members not sorted");
            }
            for &m in &c.members {
                if self.comp_of[m] != id {
                    return Err("comp_of disagrees with members");
                }
            }
            for l in c.label..c.label + c.members.len() {
                if l >= n || covered[l] {
                    return Err("label intervals do not partition [0, n)");
                }
                covered[l] = true;
            }
        }
        if covered.iter().any(|&c| !c) {
            return Err("label intervals do not cover [0, n)");
        }
        let mut expect: BTreeMap<(usize, usize), BTreeSet<(Vertex, Vertex)>> = BTreeMap::new();
        for (a, b) in self.g.edges() {
            let (x, y) = (self.comp_of[a], self.comp_of[b]);
            if x != y {
                expect.entry((x, y)).or_default().insert((a, b));
            }
        }
        if expect != self.cond {
            return Err("condensation out of sync with graph");
        }
        for &(x, y) in self.cond.keys() {
            let (lx, ly) = (self.comps[x].as_ref().unwrap().label, self.comps[y].as_ref().unwrap().label);
            if lx >= ly {
                return Err("condensation edge against label order");
            }
            if !self.cond_out[x].contains(&y) || !self.cond_in[y].contains(&x) {
                return Err("condensation index out of sync");
            }
        }
        let out_count: usize = self.cond_out.iter().map(BTreeSet::len).sum();
        let in_count: usize = self.cond_in.iter().map(BTreeSet::len).sum();
        if out_count != self.cond.len() || in_count != self.cond.len() {
            return Err("condensation index has stale entries");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cycle_one_component() {
        let d = DecScc::new(DiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap());
        assert_eq!(d.count(), 1);
        let id = d.comp_of(0);
        assert_eq!(d.interval(id).unwrap(), (0, 2));
        d.check_invariants().unwrap();
    }

    #[test]
    fn chain_labels_follow_edges() {
        let d = DecScc::new(DiGraph::from_edges(3, &[(2, 1), (1, 0)]).unwrap());
        let l = |v| d.label(d.comp_of(v)).unwrap();
        assert!(l(2) < l(1) && l(1) < l(0));
        d.check_invariants().unwrap();
    }

    #[test]
    fn two_cycle_split() {
        let mut d = DecScc::new(DiGraph::from_edges(2, &[(0, 1), (1, 0)]).unwrap());
        let split = d.delete(1, 0).unwrap().unwrap();
        assert_eq!(split.children.len(), 2);
        assert!(d.label(d.comp_of(0)).unwrap() < d.label(d.comp_of(1)).unwrap());
        assert_eq!(d.rep_edge(d.comp_of(0), d.comp_of(1)), Some((0, 1)));
        d.check_invariants().unwrap();
        assert_eq!(d.delete(1, 0), Err(Error::MissingEdge { u: 1, v: 0 }));
    }

    #[test]
    fn dag_delete_drops_condensation_edge() {
        let mut d = DecScc::new(DiGraph::from_edges(2, &[(0, 1)]).unwrap());
        assert_eq!(d.delete(0, 1).unwrap(), None);
        assert_eq!(d.cond_edges().count(), 0);
        d.check_invariants().unwrap();
    }

    #[test]
    fn paths_and_subgraph() {
        let d = DecScc::new(DiGraph::from_edges(3, &[(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap());
        assert_eq!(d.path_in_scc(0, 2).unwrap().vertices, vec![0, 1, 2]);
        assert_eq!(d.path_in_scc(1, 1).unwrap().vertices, vec![1]);
        let z = d.scc_subgraph(d.comp_of(0)).unwrap();
        assert_eq!(z, vec![(0, 1), (1, 0), (1, 2), (2, 1)]);
        let single = DecScc::new(DiGraph::new(1));
        assert!(single.scc_subgraph(0).unwrap().is_empty());
        assert_eq!(single.scc_subgraph(7), Err(Error::UnknownComponent { id: 7 }));
        let d2 = DecScc::new(DiGraph::from_edges(2, &[(0, 1)]).unwrap());
        assert_eq!(d2.path_in_scc(0, 1), Err(Error::NotStronglyConnected { u: 0, v: 1 }));
    }
}

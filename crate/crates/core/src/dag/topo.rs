use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::error::{Error, Result};
use crate::graph::{DiGraph, Vertex};

/// Topological order: `a` maps positions to vertices, `pi` is its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopOrder {
    a: Vec<Vertex>,
    pi: Vec<usize>,
}

/// What an order-changing insertion did to the window `[start, start+len)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewrite {
    pub start: usize,
    pub s: Vec<Vertex>,
    pub z: Vec<Vertex>,
    pub t: Vec<Vertex>,
}

impl TopOrder {
    pub fn identity(n: usize) -> Self {
        TopOrder { a: (0..n).collect(), pi: (0..n).collect() }
    }

    /// Kahn's algorithm, smallest id first.
    pub fn from_graph(g: &DiGraph) -> Result<Self> {
        let n = g.n();
        let mut indeg: Vec<usize> = (0..n).map(|v| g.inn(v).len()).collect();
        let mut ready: BinaryHeap<Reverse<Vertex>> =
            (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut a = Vec::with_capacity(n);
        while let Some(Reverse(u)) = ready.pop() {
            a.push(u);
            for &v in g.out(u) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.push(Reverse(v));
                }
            }
        }
        if a.len() != n {
            return Err(Error::BadParameter("graph is not acyclic"));
        }
        let mut pi = vec![0; n];
        for (i, &v) in a.iter().enumerate() {
            pi[v] = i;
        }
        Ok(TopOrder { a, pi })
    }

    pub fn pi(&self, v: Vertex) -> usize {
        self.pi[v]
    }

    pub fn order(&self) -> &[Vertex] {
        &self.a
    }

    pub fn is_valid_for(&self, g: &DiGraph) -> bool {
        self.a.iter().enumerate().all(|(i, &v)| self.pi[v] == i)
            && g.edges().all(|(u, v)| self.pi[u] < self.pi[v])
    }

    /// Adjusts the order for a new edge `u -> v`. `reaches` must answer for
    /// the graph *before* the insertion. Rejects edges closing a cycle,
    /// leaving the order untouched.
    pub fn insert(
        &mut self,
        u: Vertex,
        v: Vertex,
        mut reaches: impl FnMut(Vertex, Vertex) -> bool,
    ) -> Result<Option<Rewrite>> {
        let (pu, pv) = (self.pi[u], self.pi[v]);
        if pu < pv {
            return Ok(None);
        }
        let window = &self.a[pv..=pu];
        let mut s = Vec::new();
        let mut z = Vec::new();
        let mut t = Vec::new();
        for &w in window {
            let in_t = w == v || reaches(v, w);
            let in_s = w == u || reaches(w, u);
            match (in_s, in_t) {
                (true, true) => return Err(Error::CycleIntroduced { u, v }),
                (true, false) => s.push(w),
                (false, true) => t.push(w),
                (false, false) => z.push(w),
            }
        }
        for (offset, &w) in s.iter().chain(&z).chain(&t).enumerate() {
            self.a[pv + offset] = w;
            self.pi[w] = pv + offset;
        }
        Ok(Some(Rewrite { start: pv, s, z, t }))
    }
}

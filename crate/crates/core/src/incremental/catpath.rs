//! Persistent catenable edge sequences.
//!
//! A height-balanced rope over shared nodes: concatenation allocates
//! `O(log n)` new nodes and never touches its operands, so a handle can be
//! stored in many tables at once.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{PathWitness, Vertex};

#[derive(Debug)]
enum Node {
    Leaf { u: Vertex, v: Vertex, w: f64 },
    Cat { left: Arc<Node>, right: Arc<Node>, hops: usize, weight: f64, height: u32, start: Vertex, end: Vertex },
}

impl Node {
    fn hops(&self) -> usize {
        match self {
            Node::Leaf { .. } => 1,
            Node::Cat { hops, .. } => *hops,
        }
    }

    fn weight(&self) -> f64 {
        match self {
            Node::Leaf { w, .. } => *w,
            Node::Cat { weight, .. } => *weight,
        }
    }

    fn height(&self) -> u32 {
        match self {
            Node::Leaf { .. } => 1,
            Node::Cat { height, .. } => *height,
        }
    }

    fn start(&self) -> Vertex {
        match self {
            Node::Leaf { u, .. } => *u,
            Node::Cat { start, .. } => *start,
        }
    }

    fn end(&self) -> Vertex {
        match self {
            Node::Leaf { v, .. } => *v,
            Node::Cat { end, .. } => *end,
        }
    }

    fn children(&self) -> (&Arc<Node>, &Arc<Node>) {
        match self {
            Node::Cat { left, right, .. } => (left, right),
            Node::Leaf { .. } => unreachable!("leaves have no children"),
        }
    }
}

fn mk(left: Arc<Node>, right: Arc<Node>) -> Arc<Node> {
    Arc::new(Node::Cat {
        hops: left.hops() + right.hops(),
        weight: left.weight() + right.weight(),
        height: left.height().max(right.height()) + 1,
        start: left.start(),
        end: right.end(),
        left,
        right,
    })
}

fn rotate_left(x: &Arc<Node>) -> Arc<Node> {
    let (a, r) = x.children();
    let (b, c) = r.children();
    mk(mk(a.clone(), b.clone()), c.clone())
}

fn rotate_right(x: &Arc<Node>) -> Arc<Node> {
    let (l, c) = x.children();
    let (a, b) = l.children();
    mk(a.clone(), mk(b.clone(), c.clone()))
}

/// Join for `h(l) > h(r) + 1`.
fn join_right(l: &Arc<Node>, r: Arc<Node>) -> Arc<Node> {
    let (a, c) = l.children();
    if c.height() <= r.height() + 1 {
        let t = mk(c.clone(), r);
        if t.height() <= a.height() + 1 {
            mk(a.clone(), t)
        } else {
            rotate_left(&mk(a.clone(), rotate_right(&t)))
        }
    } else {
        let t = join_right(c, r);
        if t.height() <= a.height() + 1 {
            mk(a.clone(), t)
        } else {
            rotate_left(&mk(a.clone(), t))
        }
    }
}

/// Join for `h(r) > h(l) + 1`.
fn join_left(l: Arc<Node>, r: &Arc<Node>) -> Arc<Node> {
    let (c, a) = r.children();
    if c.height() <= l.height() + 1 {
        let t = mk(l, c.clone());
        if t.height() <= a.height() + 1 {
            mk(t, a.clone())
        } else {
            rotate_right(&mk(rotate_left(&t), a.clone()))
        }
    } else {
        let t = join_left(l, c);
        if t.height() <= a.height() + 1 {
            mk(t, a.clone())
        } else {
            rotate_right(&mk(t, a.clone()))
        }
    }
}

fn join(l: Arc<Node>, r: Arc<Node>) -> Arc<Node> {
    let (hl, hr) = (l.height(), r.height());
    if hl > hr + 1 {
        join_right(&l, r)
    } else if hr > hl + 1 {
        join_left(l, &r)
    } else {
        mk(l, r)
    }
}

/// A walk stored as a persistent sequence of weighted edges. An empty path
/// still knows the vertex it sits at.
#[derive(Debug, Clone)]
pub struct CatPath {
    root: Option<Arc<Node>>,
    at: Vertex,
}

impl CatPath {
    pub fn empty(v: Vertex) -> Self {
        CatPath { root: None, at: v }
    }

    pub fn edge(u: Vertex, v: Vertex, w: f64) -> Self {
        CatPath { root: Some(Arc::new(Node::Leaf { u, v, w })), at: u }
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    pub fn start(&self) -> Vertex {
        self.root.as_ref().map_or(self.at, |r| r.start())
    }

    pub fn end(&self) -> Vertex {
        self.root.as_ref().map_or(self.at, |r| r.end())
    }

    pub fn hops(&self) -> usize {
        self.root.as_ref().map_or(0, |r| r.hops())
    }

    pub fn weight(&self) -> f64 {
        self.root.as_ref().map_or(0.0, |r| r.weight())
    }

    pub fn height(&self) -> u32 {
        self.root.as_ref().map_or(0, |r| r.height())
    }

    pub fn concat(&self, other: &CatPath) -> Result<CatPath> {
        if self.end() != other.start() {
            return Err(Error::EndpointMismatch { left_end: self.end(), right_start: other.start() });
        }
        let root = match (&self.root, &other.root) {
            (None, _) => return Ok(other.clone()),
            (_, None) => return Ok(self.clone()),
            (Some(a), Some(b)) => join(a.clone(), b.clone()),
        };
        Ok(CatPath { root: Some(root), at: self.at })
    }

    /// `self · (u, v, w) · other`, a convenience for the common pattern.
    pub fn via(&self, u: Vertex, v: Vertex, w: f64, other: &CatPath) -> Result<CatPath> {
        self.concat(&CatPath::edge(u, v, w))?.concat(other)
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex, f64)> {
        let mut out = Vec::with_capacity(self.hops());
        let mut stack: Vec<&Arc<Node>> = self.root.iter().collect();
        while let Some(node) = stack.pop() {
            match &**node {
                Node::Leaf { u, v, w } => out.push((*u, *v, *w)),
                Node::Cat { left, right, .. } => {
                    stack.push(right);
                    stack.push(left);
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.hops() + 1);
        out.push(self.start());
        out.extend(self.edges().into_iter().map(|(_, v, _)| v));
        out
    }

    pub fn to_witness(&self) -> PathWitness {
        PathWitness { vertices: self.vertices(), total_weight: self.weight() }
    }

    /// Every internal node has children whose heights differ by at most one
    /// and whose cached summaries are consistent.
    pub fn is_balanced(&self) -> bool {
        fn check(n: &Node) -> bool {
            match n {
                Node::Leaf { .. } => true,
                Node::Cat { left, right, height, start, end, hops, .. } => {
                    left.height().abs_diff(right.height()) <= 1
                        && *height == left.height().max(right.height()) + 1
                        && *start == left.start()
                        && *end == right.end()
                        && left.end() == right.start()
                        && *hops == left.hops() + right.hops()
                        && check(left)
                        && check(right)
                }
            }
        }
        self.root.as_deref().is_none_or(check)
    }
}

impl PartialEq for CatPath {
    fn eq(&self, other: &Self) -> bool {
        self.start() == other.start() && self.edges() == other.edges()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(from: Vertex, len: usize) -> CatPath {
        let mut p = CatPath::empty(from);
        for i in 0..len {
            p = p.concat(&CatPath::edge(from + i, from + i + 1, 1.0)).unwrap();
        }
        p
    }

    #[test]
    fn empty_is_identity() {
        let p = chain(3, 4);
        assert_eq!(CatPath::empty(3).concat(&p).unwrap(), p);
        assert_eq!(p.concat(&CatPath::empty(7)).unwrap(), p);
    }

    #[test]
    fn concat_appends() {
        let a = chain(0, 5);
        let b = chain(5, 9);
        let c = a.concat(&b).unwrap();
        assert_eq!(c.vertices(), (0..=14).collect::<Vec<_>>());
        assert_eq!(c.hops(), 14);
        assert_eq!(a.hops(), 5, "operands untouched");
        assert!(c.is_balanced());
    }

    #[test]
    fn mismatch() {
        let err = chain(0, 2).concat(&chain(5, 1)).unwrap_err();
        assert_eq!(err, Error::EndpointMismatch { left_end: 2, right_start: 5 });
    }

    #[test]
    fn long_chain_stays_shallow() {
        let p = chain(0, 1000);
        assert!(p.is_balanced());
        assert!(p.height() <= 16);
    }
}

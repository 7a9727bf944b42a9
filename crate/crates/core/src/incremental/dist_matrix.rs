use alloc::vec;
use alloc::vec::Vec;

use super::catpath::CatPath;
use crate::algebra::{WeightMatrix, WitnessMatrix};
use crate::error::Result;
use crate::graph::{DiGraph, Vertex};
use crate::oracle::oracle_dist;

/// Pairwise lengths with a path realizing each finite entry.
#[derive(Debug, Clone, PartialEq)]
pub struct DistPathMatrix {
    n: usize,
    len: Vec<f64>,
    path: Vec<Option<CatPath>>,
}

impl DistPathMatrix {
    /// Zero diagonal with empty paths, infinite elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = DistPathMatrix { n, len: vec![f64::INFINITY; n * n], path: vec![None; n * n] };
        for v in 0..n {
            m.set(v, v, 0.0, CatPath::empty(v));
        }
        m
    }

    /// Exact shortest paths of `g`, keeping only lengths `<= limit`.
    pub fn exact(g: &DiGraph, limit: f64) -> Self {
        let n = g.n();
        let mut m = DistPathMatrix::identity(n);
        for s in 0..n {
            let (dist, parent) = oracle_dist(g, s);
            let mut by_dist: Vec<Vertex> = (0..n).filter(|&v| v != s && dist[v].is_finite() && dist[v] <= limit).collect();
            by_dist.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));
            for v in by_dist {
                let p = parent[v].expect("reached");
                let w = g.weight(p, v).expect("tree edge");
                let prefix = m.path(s, p).expect("parent settled first").clone();
                let path = prefix.concat(&CatPath::edge(p, v, w)).expect("adjacent");
                m.set(s, v, dist[v], path);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: Vertex, j: Vertex) -> f64 {
        self.len[i * self.n + j]
    }

    pub fn path(&self, i: Vertex, j: Vertex) -> Option<&CatPath> {
        self.path[i * self.n + j].as_ref()
    }

    pub fn set(&mut self, i: Vertex, j: Vertex, len: f64, path: CatPath) {
        self.len[i * self.n + j] = len;
        self.path[i * self.n + j] = Some(path);
    }

    fn block(&self, rows: &[Vertex], cols: &[Vertex]) -> WeightMatrix {
        let data: Vec<Vec<f64>> = rows.iter().map(|&i| cols.iter().map(|&j| self.get(i, j)).collect()).collect();
        if rows.is_empty() {
            WeightMatrix::new(0, cols.len())
        } else {
            WeightMatrix::from_rows(&data)
        }
    }
}

/// Pieces of a matrix product kept together with the paths of each entry.
struct Block {
    len: WeightMatrix,
    path: Vec<Vec<Option<CatPath>>>,
}

impl Block {
    fn of(m: &DistPathMatrix, rows: &[Vertex], cols: &[Vertex]) -> Block {
        Block {
            len: m.block(rows, cols),
            path: rows.iter().map(|&i| cols.iter().map(|&j| m.path(i, j).cloned()).collect()).collect(),
        }
    }

    fn product(
        &self,
        other: &Block,
        mul: &impl Fn(&WeightMatrix, &WeightMatrix) -> Result<(WeightMatrix, WitnessMatrix)>,
    ) -> Result<Block> {
        let (len, wit) = mul(&self.len, &other.len)?;
        let mut path = vec![vec![None; len.cols()]; len.rows()];
        for (i, row) in path.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                if let Some(k) = wit.get(i, j) {
                    let left = self.path[i][k].as_ref().expect("finite entry has a path");
                    let right = other.path[k][j].as_ref().expect("finite entry has a path");
                    *slot = Some(left.concat(right).expect("witness joins matching endpoints"));
                }
            }
        }
        Ok(Block { len, path })
    }

    /// Entrywise minimum with `other`, keeping `self` on ties.
    fn min_with(&mut self, other: Block) {
        for i in 0..self.len.rows() {
            for j in 0..self.len.cols() {
                if other.len.get(i, j) < self.len.get(i, j) {
                    self.len.set(i, j, other.len.get(i, j));
                    self.path[i][j] = other.path[i][j].clone();
                }
            }
        }
    }
}

/// Number of squarings used to close a block over `u` endpoints.
pub fn closure_rounds(u: usize) -> usize {
    if u == 0 {
        return 0;
    }
    let target = 2 * u + 1;
    (usize::BITS - (target - 1).leading_zeros()) as usize
}

/// Folds `new_edges` into `d` with the given min-plus product.
///
/// Over the endpoint set `U` of the new edges, the block `D*[U,U]` of
/// `D* = min(D, new edges)` is closed by repeated squaring; then
/// `D*[V,U] * closure * D*[U,V]` is merged into `D*`. Returns the matrix and
/// the number of sequential products on any entry's history (squarings plus
/// two), which bounds how often approximation error compounds.
pub fn recompute_with(
    d: &DistPathMatrix,
    new_edges: &[(Vertex, Vertex, f64)],
    mul: impl Fn(&WeightMatrix, &WeightMatrix) -> Result<(WeightMatrix, WitnessMatrix)>,
) -> Result<(DistPathMatrix, usize)> {
    let n = d.n;
    let mut star = d.clone();
    for &(u, v, w) in new_edges {
        if w < star.get(u, v) {
            star.set(u, v, w, CatPath::edge(u, v, w));
        }
    }
    let mut ends: Vec<Vertex> = new_edges.iter().flat_map(|&(u, v, _)| [u, v]).collect();
    ends.sort_unstable();
    ends.dedup();
    if ends.is_empty() {
        return Ok((star, 0));
    }
    let all: Vec<Vertex> = (0..n).collect();
    let rounds = closure_rounds(ends.len());
    let mut closure = Block::of(&star, &ends, &ends);
    for _ in 0..rounds {
        let sq = closure.product(&closure, &mul)?;
        closure.min_with(sq);
    }
    let left = Block::of(&star, &all, &ends).product(&closure, &mul)?;
    let through = left.product(&Block::of(&star, &ends, &all), &mul)?;
    let mut out = Block::of(&star, &all, &all);
    out.min_with(through);
    let mut result = DistPathMatrix { n, len: vec![f64::INFINITY; n * n], path: vec![None; n * n] };
    for i in 0..n {
        for j in 0..n {
            if let Some(p) = out.path[i][j].take() {
                result.set(i, j, out.len.get(i, j), p);
            }
        }
    }
    Ok((result, rounds + 2))
}

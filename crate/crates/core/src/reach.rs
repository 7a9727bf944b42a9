//! Randomized dynamic reachability via an explicit inverse of `I - X`.
//!
//! Every present edge `uv` carries a random nonzero field value `x_uv`; `X`
//! holds these values. For `u != v`, `(I - X)^-1[u][v]` is a polynomial in the
//! edge values that is nonzero exactly when some `u -> v` path exists, so a
//! random evaluation is nonzero with high probability in that case and always
//! zero otherwise.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Field, FieldElem, FieldMatrix};
use crate::counters::Counters;
use crate::error::{Error, Result};
use crate::graph::Vertex;

const MAX_REBUILDS: usize = 3;

#[derive(Debug, Clone)]
enum Undo {
    Rank1 { i: usize, j: usize, delta: FieldElem },
    Inserted { u: Vertex, v: Vertex },
    Deleted { u: Vertex, v: Vertex, x: FieldElem },
    RowAdded,
    RowsReset(Vec<Vertex>),
    Rebuilt { ninv: FieldMatrix, values: BTreeMap<(Vertex, Vertex), FieldElem> },
}

#[derive(Debug, Clone)]
struct Mark {
    log_len: usize,
    rng: ChaCha8Rng,
}

#[derive(Debug, Clone)]
pub struct ReachEngine {
    n: usize,
    field: Field,
    rng: ChaCha8Rng,
    values: BTreeMap<(Vertex, Vertex), FieldElem>,
    ninv: FieldMatrix,
    rows: Vec<Vertex>,
    in_rows: Vec<bool>,
    log: Vec<Undo>,
    marks: Vec<Mark>,
    counters: Arc<Counters>,
}

impl ReachEngine {
    /// Engine over the empty graph on `n` vertices.
    pub fn new(n: usize, seed: u64, counters: Arc<Counters>) -> Self {
        Self::with_field(n, seed, Field::default(), counters)
    }

    pub fn with_field(n: usize, seed: u64, field: Field, counters: Arc<Counters>) -> Self {
        ReachEngine {
            n,
            field,
            rng: ChaCha8Rng::seed_from_u64(seed),
            values: BTreeMap::new(),
            ninv: FieldMatrix::identity(n),
            rows: Vec::new(),
            in_rows: vec![false; n],
            log: Vec::new(),
            marks: Vec::new(),
            counters,
        }
    }

    /// Engine over the given edge set, built by one full inversion.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
        seed: u64,
        counters: Arc<Counters>,
    ) -> Result<Self> {
        let mut e = Self::new(n, seed, counters);
        for (u, v) in edges {
            e.check_pair(u, v)?;
            if e.values.contains_key(&(u, v)) {
                return Err(Error::DuplicateEdge { u, v });
            }
            e.values.insert((u, v), 0);
        }
        e.rebuild_inner()?;
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counters(&self) -> &Arc<Counters> {
        &self.counters
    }

    pub fn inverse(&self) -> &FieldMatrix {
        &self.ninv
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.values.contains_key(&(u, v))
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        Ok(())
    }

    fn draw_nonzero(&mut self) -> FieldElem {
        loop {
            let x = self.field.reduce(self.rng.next_u64());
            if x != 0 {
                return x;
            }
        }
    }

    /// Fresh values for every edge and a full inversion; retried on a
    /// singular draw.
    fn rebuild_inner(&mut self) -> Result<()> {
        for _ in 0..MAX_REBUILDS {
            let keys: Vec<_> = self.values.keys().copied().collect();
            for key in keys {
                let x = self.draw_nonzero();
                self.values.insert(key, x);
            }
            let mut m = FieldMatrix::identity(self.n);
            for (&(u, v), &x) in &self.values {
                let cur = m.get(u, v);
                m.set(u, v, self.field.sub(cur, x));
            }
            self.counters.rebuild();
            if let Ok(inv) = m.invert(&self.field) {
                self.ninv = inv;
                return Ok(());
            }
        }
        Err(Error::RandomnessExhausted)
    }

    /// Re-randomizes all edge values. Used when a consumer detects an
    /// inconsistent answer.
    pub fn rebuild(&mut self) -> Result<()> {
        let snapshot = Undo::Rebuilt { ninv: self.ninv.clone(), values: self.values.clone() };
        self.rebuild_inner()?;
        self.record(snapshot);
        Ok(())
    }

    fn apply_rank1(&mut self, i: usize, j: usize, delta: FieldElem) -> Result<()> {
        self.counters.rank1_update();
        match self.ninv.rank1_update(&self.field, i, j, delta) {
            Ok(()) => {
                self.record(Undo::Rank1 { i, j, delta });
                Ok(())
            }
            Err(Error::Singular) => self.rebuild(),
            Err(e) => Err(e),
        }
    }

    pub fn insert(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_pair(u, v)?;
        if self.values.contains_key(&(u, v)) {
            return Err(Error::DuplicateEdge { u, v });
        }
        let x = self.draw_nonzero();
        self.values.insert((u, v), x);
        self.record(Undo::Inserted { u, v });
        // The matrix entry (u, v) goes from 0 to -x; on a singular update the
        // rebuild already accounts for the new edge.
        let delta = self.field.neg(x);
        self.apply_rank1(u, v, delta)?;
        self.debug_check();
        Ok(())
    }

    pub fn delete(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_pair(u, v)?;
        let x = self.values.remove(&(u, v)).ok_or(Error::MissingEdge { u, v })?;
        self.record(Undo::Deleted { u, v, x });
        self.apply_rank1(u, v, x)?;
        self.debug_check();
        Ok(())
    }

    /// `u = v` is always true; otherwise the inverse entry is tested.
    pub fn reaches(&self, u: Vertex, v: Vertex) -> bool {
        self.counters.engine_query();
        u == v || self.ninv.get(u, v) != 0
    }

    /// Like [`Self::reaches`] but not counted as a query.
    pub fn peek(&self, u: Vertex, v: Vertex) -> bool {
        u == v || self.ninv.get(u, v) != 0
    }

    /// Reachability row of `r`, without touching query counters.
    pub fn row(&self, r: Vertex) -> Vec<bool> {
        let row = self.ninv.row(r);
        (0..self.n).map(|v| v == r || row[v] != 0).collect()
    }

    pub fn row_add(&mut self, r: Vertex) -> Result<()> {
        self.check_pair(r, r)?;
        if self.in_rows[r] {
            return Err(Error::DuplicateRow { row: r });
        }
        self.in_rows[r] = true;
        self.rows.push(r);
        self.record(Undo::RowAdded);
        Ok(())
    }

    pub fn rows_reset(&mut self) {
        for &r in &self.rows {
            self.in_rows[r] = false;
        }
        let old = core::mem::take(&mut self.rows);
        self.record(Undo::RowsReset(old));
    }

    pub fn rows(&self) -> &[Vertex] {
        &self.rows
    }

    /// Reachability rows for the tracked set, in insertion order.
    pub fn rows_read(&self) -> Vec<Vec<bool>> {
        self.rows.iter().map(|&r| self.row(r)).collect()
    }

    pub fn mark(&mut self) {
        self.marks.push(Mark { log_len: self.log.len(), rng: self.rng.clone() });
    }

    /// Undoes everything since the most recent mark.
    pub fn rollback(&mut self) -> Result<()> {
        let mark = self.marks.pop().ok_or(Error::NoMark)?;
        while self.log.len() > mark.log_len {
            match self.log.pop().expect("log longer than mark") {
                Undo::Rank1 { i, j, delta } => {
                    let back = self.field.neg(delta);
                    self.ninv
                        .rank1_update(&self.field, i, j, back)
                        .expect("inverse of an invertible matrix exists");
                }
                Undo::Inserted { u, v } => {
                    self.values.remove(&(u, v));
                }
                Undo::Deleted { u, v, x } => {
                    self.values.insert((u, v), x);
                }
                Undo::RowAdded => {
                    let r = self.rows.pop().expect("row was added");
                    self.in_rows[r] = false;
                }
                Undo::RowsReset(old) => {
                    for &r in &old {
                        self.in_rows[r] = true;
                    }
                    self.rows = old;
                }
                Undo::Rebuilt { ninv, values } => {
                    self.ninv = ninv;
                    self.values = values;
                }
            }
        }
        self.rng = mark.rng;
        Ok(())
    }

    /// `(I - X) * Ninv == I`.
    pub fn is_exact(&self) -> bool {
        let mut m = FieldMatrix::identity(self.n);
        for (&(u, v), &x) in &self.values {
            let cur = m.get(u, v);
            m.set(u, v, self.field.sub(cur, x));
        }
        m.mul(&self.field, &self.ninv).is_ok_and(|p| p.is_identity())
    }

    fn debug_check(&self) {
        if cfg!(debug_assertions) && self.n <= 16 {
            debug_assert!(self.is_exact(), "engine inverse drifted");
        }
    }

    /// Undo entries are only kept while some mark is outstanding.
    fn record(&mut self, undo: Undo) {
        if !self.marks.is_empty() {
            self.log.push(undo);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(n: usize) -> ReachEngine {
        ReachEngine::new(n, 7, Arc::new(Counters::default()))
    }

    #[test]
    fn empty_graph_is_identity() {
        let e = engine(4);
        assert!(e.inverse().is_identity());
        assert!(e.reaches(2, 2));
        assert!(!e.reaches(0, 1));
    }

    #[test]
    fn single_edge_value() {
        let mut e = engine(3);
        e.insert(0, 2).unwrap();
        assert_eq!(e.inverse().get(0, 2), e.values[&(0, 2)]);
        assert!(e.reaches(0, 2));
        assert!(!e.reaches(2, 0));
    }

    #[test]
    fn insert_delete_restores_answers() {
        let mut e = engine(3);
        e.insert(0, 1).unwrap();
        e.insert(1, 2).unwrap();
        assert!(e.reaches(0, 2));
        e.delete(1, 2).unwrap();
        assert!(!e.reaches(0, 2));
        assert!(e.reaches(0, 1));
        assert!(matches!(e.delete(1, 2), Err(Error::MissingEdge { .. })));
        assert!(matches!(e.insert(0, 1), Err(Error::DuplicateEdge { .. })));
    }

    #[test]
    fn rows() {
        let mut e = engine(3);
        assert!(e.rows_read().is_empty());
        e.insert(0, 1).unwrap();
        e.row_add(0).unwrap();
        assert_eq!(e.rows_read(), vec![vec![true, true, false]]);
        assert!(matches!(e.row_add(0), Err(Error::DuplicateRow { row: 0 })));
        e.rows_reset();
        e.row_add(0).unwrap();
    }

    #[test]
    fn rollback_is_exact_and_lifo() {
        let mut e = engine(5);
        e.insert(0, 1).unwrap();
        let base = e.inverse().clone();
        e.mark();
        e.insert(1, 2).unwrap();
        let mid = e.inverse().clone();
        e.mark();
        e.delete(0, 1).unwrap();
        e.insert(3, 4).unwrap();
        e.row_add(3).unwrap();
        e.rollback().unwrap();
        assert_eq!(e.inverse(), &mid);
        e.rollback().unwrap();
        assert_eq!(e.inverse(), &base);
        assert!(e.rows().is_empty());
        assert_eq!(e.rollback(), Err(Error::NoMark));
    }

    #[test]
    fn same_seed_same_inverse() {
        let build = || {
            let mut e = engine(6);
            for (u, v) in [(0, 1), (1, 2), (2, 0), (3, 4)] {
                e.insert(u, v).unwrap();
            }
            e.delete(1, 2).unwrap();
            e.inverse().clone()
        };
        assert_eq!(build(), build());
    }
}

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::catpath::CatPath;
use super::trees::Trees;
use super::Snapshots;
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Vertex};

type Row = Arc<Vec<Option<CatPath>>>;

#[derive(Debug, Clone, PartialEq)]
struct State {
    g: DiGraph,
    trees: Arc<Trees>,
    /// `base[u][v]`: tree path for pairs already connected at phase start.
    base: Arc<Vec<Row>>,
    eplus: Vec<(Vertex, Vertex)>,
    /// `to_tail[i][u]`: path `u -> u_i` stored when `e_i` arrived.
    to_tail: Vec<Row>,
    /// `from_head[i][v]`: path `v_i -> v` stored when `e_i` arrived.
    from_head: Vec<Row>,
}

/// Incremental point-to-point path reporting with persistent paths.
///
/// For the `i`-th edge `e_i = (u_i, v_i)` of a phase, paths `u -> u_i` and
/// `v_i -> v` are stored for every `u`, `v` reachable using only
/// `e_1 .. e_{i-1}`. A query returns the base path if one exists, else
/// `P(s, u_i) · e_i · Q(v_i, t)` for the smallest `i` with both pieces
/// stored; that `i` is the first edge after which `t` became reachable, and
/// the resulting path is simple.
#[derive(Debug, Clone)]
pub struct IncPath {
    state: State,
    phase_len: usize,
    marks: Snapshots<State>,
}

fn base_paths(g: &DiGraph, trees: &Trees) -> Vec<Row> {
    let n = g.n();
    (0..n)
        .map(|s| {
            let mut row: Vec<Option<CatPath>> = vec![None; n];
            row[s] = Some(CatPath::empty(s));
            for &v in trees.order(s).iter().skip(1) {
                let p = trees.parent(s, v).expect("reached");
                let w = g.weight(p, v).expect("tree edge in graph");
                let prefix = row[p].as_ref().expect("parents first");
                row[v] = Some(prefix.concat(&CatPath::edge(p, v, w)).expect("adjacent"));
            }
            Arc::new(row)
        })
        .collect()
}

impl IncPath {
    pub fn new(g: DiGraph, phase_len: usize) -> Result<Self> {
        if phase_len == 0 {
            return Err(Error::BadParameter("phase length must be positive"));
        }
        let trees = Trees::from_graph(&g);
        let base = Arc::new(base_paths(&g, &trees));
        Ok(IncPath {
            state: State {
                g,
                trees: Arc::new(trees),
                base,
                eplus: Vec::new(),
                to_tail: Vec::new(),
                from_head: Vec::new(),
            },
            phase_len,
            marks: Snapshots::default(),
        })
    }

    pub fn graph(&self) -> &DiGraph {
        &self.state.g
    }

    /// Index (1-based) of the inserted edge the answer for `(s, t)` goes
    /// through; 0 for a base path.
    pub fn level(&self, s: Vertex, t: Vertex) -> Option<usize> {
        let st = &self.state;
        if st.base[s][t].is_some() {
            return Some(0);
        }
        (0..st.eplus.len()).find(|&i| st.to_tail[i][s].is_some() && st.from_head[i][t].is_some()).map(|i| i + 1)
    }

    fn lookup(&self, s: Vertex, t: Vertex) -> Option<CatPath> {
        let st = &self.state;
        match self.level(s, t)? {
            0 => st.base[s][t].clone(),
            i => {
                let (u, v) = st.eplus[i - 1];
                let w = st.g.weight(u, v).expect("inserted edge present");
                let p = st.to_tail[i - 1][s].as_ref().expect("stored");
                let q = st.from_head[i - 1][t].as_ref().expect("stored");
                Some(p.via(u, v, w, q).expect("pieces meet at the edge"))
            }
        }
    }

    pub fn insert(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.state.g.insert_edge(u, v, None)?;
        self.push_edge(u, v);
        Ok(())
    }

    /// Inserts with an explicit weight (carried into reported paths).
    pub fn insert_weighted(&mut self, u: Vertex, v: Vertex, w: Option<f64>) -> Result<()> {
        self.state.g.insert_edge(u, v, w)?;
        self.push_edge(u, v);
        Ok(())
    }

    fn push_edge(&mut self, u: Vertex, v: Vertex) {
        let n = self.state.g.n();
        let to_tail: Vec<_> = (0..n).map(|x| self.lookup(x, u)).collect();
        let from_head: Vec<_> = (0..n).map(|x| self.lookup(v, x)).collect();
        let st = &mut self.state;
        st.eplus.push((u, v));
        st.to_tail.push(Arc::new(to_tail));
        st.from_head.push(Arc::new(from_head));
        if st.eplus.len() == self.phase_len {
            let trees = st.trees.recompute(&st.g, &st.eplus);
            st.base = Arc::new(base_paths(&st.g, &trees));
            st.trees = Arc::new(trees);
            st.eplus.clear();
            st.to_tail.clear();
            st.from_head.clear();
        }
    }

    pub fn path(&self, s: Vertex, t: Vertex) -> Result<Option<CatPath>> {
        self.state.g.check_vertex(s)?;
        self.state.g.check_vertex(t)?;
        Ok(self.lookup(s, t))
    }

    pub fn mark(&mut self) {
        self.marks.push(&self.state);
    }

    pub fn rollback(&mut self) -> Result<()> {
        self.state = self.marks.pop()?;
        Ok(())
    }
}

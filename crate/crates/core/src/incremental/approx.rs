use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::catpath::CatPath;
use super::dist_matrix::{recompute_with, DistPathMatrix};
use super::Snapshots;
use crate::algebra::minplus_approx;
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Vertex};

/// One matrix of the hierarchy with its bookkeeping.
#[derive(Debug, Clone, PartialEq)]
struct Level {
    matrix: Arc<DistPathMatrix>,
    /// Last phase whose edges are folded in.
    covered: usize,
    /// Number of `(1+ε')` factors the entries may carry.
    exponent: usize,
}

type Entry = Option<(f64, CatPath)>;

#[derive(Debug, Clone, PartialEq)]
struct State {
    g: DiGraph,
    /// Current phase, starting at 1.
    phase: usize,
    /// Edges of every finished phase; index `j-1` holds phase `j`.
    history: Vec<Arc<Vec<(Vertex, Vertex, f64)>>>,
    /// `levels[b]` for `b = 1..=b*`; index 0 is unused.
    levels: Vec<Level>,
    /// Replacements computed earlier, keyed by the phase they take effect.
    pending: BTreeMap<usize, Vec<(usize, Level)>>,
    /// Matrix used by queries: everything before the current phase.
    base: Level,
    eplus: Vec<(Vertex, Vertex, f64)>,
    to_tail: Vec<Arc<Vec<Entry>>>,
    from_head: Vec<Arc<Vec<Entry>>>,
}

/// Incremental `(1+ε)`-approximate shortest paths under edge insertions
/// with real weights in `[1, C]`.
///
/// Matrices `D_1 .. D_{b*}` lag behind the graph by staggered amounts:
/// `D_b` is rebuilt from `D_{b+1}` every `2^{b-1}` phases and takes effect
/// `2^{b-1}` phases later, while `D_{b*}` is rebuilt from scratch. Each
/// rebuild folds in only a few phases of edges, so every stored entry is the
/// product of at most `b*+1` recomputations. Inside a phase, the `i`-th
/// inserted edge stores the current answers into its tail and out of its
/// head, which queries combine exactly.
#[derive(Debug, Clone)]
pub struct IncApprox {
    state: State,
    eps: f64,
    eps_inner: f64,
    phase_len: usize,
    b_star: usize,
    marks: Snapshots<State>,
}

fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

impl IncApprox {
    pub fn new(g: DiGraph, eps: f64, phase_len: usize) -> Result<Self> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::BadEpsilon { epsilon: eps });
        }
        if phase_len == 0 {
            return Err(Error::BadParameter("phase length must be positive"));
        }
        let n = g.n();
        let b_star = ceil_log2(n.div_ceil(phase_len)).max(1);
        let max_exponent = (b_star + 1) * (ceil_log2(2 * n + 1) + 2);
        let eps_inner = libm::pow(1.0 + eps, 1.0 / max_exponent as f64) - 1.0;
        let exact = Level { matrix: Arc::new(DistPathMatrix::exact(&g, f64::INFINITY)), covered: 0, exponent: 0 };
        let levels = (0..=b_star).map(|_| exact.clone()).collect();
        Ok(IncApprox {
            state: State {
                g,
                phase: 1,
                history: Vec::new(),
                levels,
                pending: BTreeMap::new(),
                base: exact,
                eplus: Vec::new(),
                to_tail: Vec::new(),
                from_head: Vec::new(),
            },
            eps,
            eps_inner,
            phase_len,
            b_star,
            marks: Snapshots::default(),
        })
    }

    pub fn graph(&self) -> &DiGraph {
        &self.state.g
    }

    pub fn epsilon(&self) -> f64 {
        self.eps
    }

    /// Per-product accuracy used internally.
    pub fn inner_epsilon(&self) -> f64 {
        self.eps_inner
    }

    pub fn phase(&self) -> usize {
        self.state.phase
    }

    pub fn b_star(&self) -> usize {
        self.b_star
    }

    /// `(covered phase, exponent)` of `D_b`, or of the query matrix for `b = 0`.
    pub fn level_info(&self, b: usize) -> Option<(usize, usize)> {
        let l = if b == 0 { &self.state.base } else { self.state.levels.get(b)? };
        Some((l.covered, l.exponent))
    }

    fn recompute(&self, from: &Level, upto: usize) -> Result<Level> {
        let st = &self.state;
        let edges: Vec<_> = st.history[from.covered..upto].iter().flat_map(|p| p.iter().copied()).collect();
        let eps = self.eps_inner;
        let (matrix, inc) = recompute_with(&from.matrix, &edges, |a, b| minplus_approx(a, b, eps))?;
        Ok(Level { matrix: Arc::new(matrix), covered: upto, exponent: from.exponent + inc })
    }

    fn start_phase(&mut self) -> Result<()> {
        let j = self.state.phase;
        if let Some(list) = self.state.pending.remove(&j) {
            for (b, level) in list {
                self.state.levels[b] = level;
            }
        }
        let top = (1 + j.trailing_zeros() as usize).min(self.b_star);
        for b in (1..=top).rev() {
            let fresh = if b == self.b_star {
                let all: Vec<_> = self.state.g.weighted_edges().collect();
                let identity = Level {
                    matrix: Arc::new(DistPathMatrix::identity(self.state.g.n())),
                    covered: 0,
                    exponent: 0,
                };
                let eps = self.eps_inner;
                let (matrix, inc) = recompute_with(&identity.matrix, &all, |a, b| minplus_approx(a, b, eps))?;
                Level { matrix: Arc::new(matrix), covered: j - 1, exponent: inc }
            } else {
                let parent = self.state.levels[b + 1].clone();
                self.recompute(&parent, j - 1)?
            };
            self.state.pending.entry(j + (1 << (b - 1))).or_default().push((b, fresh));
        }
        let below = self.state.levels[1].clone();
        self.state.base = self.recompute(&below, j - 1)?;
        Ok(())
    }

    fn lookup(&self, s: Vertex, t: Vertex) -> Entry {
        let st = &self.state;
        let mut best: Entry = st.base.matrix.path(s, t).map(|p| (st.base.matrix.get(s, t), p.clone()));
        let mut best_i = None;
        for i in 0..st.eplus.len() {
            if let (Some((a, _)), Some((c, _))) = (&st.to_tail[i][s], &st.from_head[i][t]) {
                let len = a + st.eplus[i].2 + c;
                if best.as_ref().is_none_or(|(b, _)| len < *b) {
                    best = Some((len, CatPath::empty(s)));
                    best_i = Some(i);
                }
            }
        }
        if let Some(i) = best_i {
            let (u, v, w) = st.eplus[i];
            let (len, p) = st.to_tail[i][s].as_ref().expect("present");
            let (len2, q) = st.from_head[i][t].as_ref().expect("present");
            let path = p.via(u, v, w, q).expect("pieces meet at the edge");
            return Some((len + w + len2, path));
        }
        best
    }

    pub fn insert(&mut self, u: Vertex, v: Vertex, w: Option<f64>) -> Result<()> {
        self.state.g.insert_edge(u, v, w)?;
        let w = self.state.g.weight(u, v).expect("just inserted");
        let n = self.state.g.n();
        let to_tail: Vec<_> = (0..n).map(|x| self.lookup(x, u)).collect();
        let from_head: Vec<_> = (0..n).map(|x| self.lookup(v, x)).collect();
        let st = &mut self.state;
        st.eplus.push((u, v, w));
        st.to_tail.push(Arc::new(to_tail));
        st.from_head.push(Arc::new(from_head));
        if st.eplus.len() == self.phase_len {
            let edges = core::mem::take(&mut st.eplus);
            st.history.push(Arc::new(edges));
            st.to_tail.clear();
            st.from_head.clear();
            st.phase += 1;
            self.start_phase()?;
        }
        Ok(())
    }

    /// Approximate distance with a path of exactly that weight.
    pub fn query(&self, s: Vertex, t: Vertex) -> Result<Option<(f64, CatPath)>> {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{floyd_warshall, WEIGHT_TOLERANCE};

    fn lcg(state: &mut u64) -> u64 {
        *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        *state >> 33
    }

    #[test]
    fn unweighted_two_approx() {
        let mut a = IncApprox::new(DiGraph::new(4), 1.0, 2).unwrap();
        for (u, v) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            a.insert(u, v, None).unwrap();
        }
        let (d, p) = a.query(0, 2).unwrap().unwrap();
        assert!((2.0..=4.0).contains(&d));
        assert_eq!(p.weight(), d);
        assert!(a.query(3, 0).unwrap().is_none());
    }

    #[test]
    fn random_run_within_stretch() {
        let n = 8;
        let eps = 0.25;
        let mut a = IncApprox::new(DiGraph::new_weighted(n, 4.0).unwrap(), eps, 3).unwrap();
        let mut seed = 7u64;
        for _ in 0..40 {
            let (u, v) = ((lcg(&mut seed) % n as u64) as usize, (lcg(&mut seed) % n as u64) as usize);
            if u == v || a.graph().has_edge(u, v) {
                continue;
            }
            let w = 1.0 + (lcg(&mut seed) % 300) as f64 / 100.0;
            a.insert(u, v, Some(w)).unwrap();
            let fw = floyd_warshall(a.graph());
            for s in 0..n {
                for t in 0..n {
                    match a.query(s, t).unwrap() {
                        None => assert!(fw[s][t].is_infinite()),
                        Some((d, p)) => {
                            let tol = WEIGHT_TOLERANCE * d.max(1.0);
                            assert!(d >= fw[s][t] - tol && d <= (1.0 + eps) * fw[s][t] + tol);
                            assert!((p.weight() - d).abs() <= tol);
                            assert_eq!((p.start(), p.end()), (s, t));
                        }
                    }
                }
            }
        }
        assert!(a.phase() > 3);
    }

    #[test]
    fn rollback_restores_answers() {
        let mut a = IncApprox::new(DiGraph::new(3), 0.5, 1).unwrap();
        a.insert(0, 1, None).unwrap();
        a.mark();
        a.insert(1, 2, None).unwrap();
        assert!(a.query(0, 2).unwrap().is_some());
        a.rollback().unwrap();
        assert!(a.query(0, 2).unwrap().is_none());
    }
}

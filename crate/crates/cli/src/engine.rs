//! Uniform front over every structure in `dyngraph-core`.

use std::fmt;
use std::sync::Arc;

use dyngraph_core::dag::{default_delta, DagPath, DagTree, Rewrite};
use dyngraph_core::fully::{default_phase_len, default_tree_delta, FdPath, FdScc, FdTree};
use dyngraph_core::incremental::{phase_len_for, IncApprox, IncExact, IncPath, IncTree, DEFAULT_ALPHA};
use dyngraph_core::{Counters, DiGraph, PathWitness, Vertex};

use crate::script::Command;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, clap::ValueEnum)]
pub enum EngineKind {
    DagPath,
    DagTree,
    FdScc,
    FdPath,
    FdTree,
    IncTree,
    IncPath,
    IncApprox,
    IncExactPair,
    IncExactTree,
    Offline,
}

impl EngineKind {
    pub const ALL: [EngineKind; 11] = [
        EngineKind::DagPath,
        EngineKind::DagTree,
        EngineKind::FdScc,
        EngineKind::FdPath,
        EngineKind::FdTree,
        EngineKind::IncTree,
        EngineKind::IncPath,
        EngineKind::IncApprox,
        EngineKind::IncExactPair,
        EngineKind::IncExactTree,
        EngineKind::Offline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EngineKind::DagPath => "dag-path",
            EngineKind::DagTree => "dag-tree",
            EngineKind::FdScc => "fd-scc",
            EngineKind::FdPath => "fd-path",
            EngineKind::FdTree => "fd-tree",
            EngineKind::IncTree => "inc-tree",
            EngineKind::IncPath => "inc-path",
            EngineKind::IncApprox => "inc-approx",
            EngineKind::IncExactPair => "inc-exact-pair",
            EngineKind::IncExactTree => "inc-exact-tree",
            EngineKind::Offline => "offline",
        }
    }

    /// Whether answers depend on `--seed`.
    pub fn is_randomized(self) -> bool {
        matches!(
            self,
            EngineKind::DagPath | EngineKind::DagTree | EngineKind::FdScc | EngineKind::FdPath | EngineKind::FdTree
        )
    }

    pub fn is_acyclic_only(self) -> bool {
        matches!(self, EngineKind::DagPath | EngineKind::DagTree)
    }

    pub fn supports(self, cmd: &Command) -> bool {
        use EngineKind::*;
        match cmd {
            Command::Insert { .. } => true,
            Command::InsertInto { .. } => matches!(self, IncTree | IncExactTree | Offline),
            Command::Delete { .. } => matches!(self, DagPath | DagTree | FdScc | FdPath | FdTree | Offline),
            Command::Path { .. } => {
                matches!(self, DagPath | FdPath | IncPath | IncApprox | IncExactPair | Offline)
            }
            Command::Tree { .. } => matches!(self, DagTree | FdTree | IncTree | IncExactTree),
            Command::Scc => matches!(self, FdScc),
            Command::TopOrder => matches!(self, DagPath | DagTree),
            Command::Dist { .. } => matches!(self, IncApprox | IncExactPair | IncExactTree | Offline),
        }
    }

    /// Whether every reported path must be simple.
    pub fn simple_paths(self) -> bool {
        matches!(self, EngineKind::DagPath | EngineKind::FdPath | EngineKind::IncPath | EngineKind::Offline)
    }

    pub fn exact_distances(self) -> bool {
        matches!(self, EngineKind::IncExactPair | EngineKind::IncExactTree | EngineKind::Offline)
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Tuning knobs; `None` picks the per-engine default.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub seed: u64,
    pub epsilon: f64,
    pub phase_len: Option<usize>,
    pub delta: Option<usize>,
    pub alpha: f64,
}

impl Default for Params {
    fn default() -> Self {
        Params { seed: 0, epsilon: 0.5, phase_len: None, delta: None, alpha: DEFAULT_ALPHA }
    }
}

impl Params {
    pub fn fd_phase_len(&self, n: usize) -> usize {
        self.phase_len.unwrap_or_else(|| default_phase_len(n))
    }

    pub fn inc_phase_len(&self, n: usize) -> usize {
        self.phase_len.unwrap_or_else(|| phase_len_for(n, self.alpha))
    }
}

/// One answered query.
#[derive(Debug, Clone, PartialEq)]
pub enum Answer {
    Path { s: Vertex, t: Vertex, path: Option<PathWitness> },
    Tree { s: Vertex, edges: Vec<(Vertex, Vertex)>, depth: Option<Vec<Option<usize>>> },
    Scc(Vec<usize>),
    TopOrder(Vec<Vertex>),
    Dist { s: Vertex, t: Vertex, dist: Option<f64>, path: Option<PathWitness> },
}

fn join(items: impl IntoIterator<Item = impl fmt::Display>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Path { s, t, path: Some(p) } => write!(f, "PATH {s} {t}: {}", join(&p.vertices)),
            Answer::Path { s, t, path: None } => write!(f, "PATH {s} {t}: UNREACHABLE"),
            Answer::Tree { s, edges, .. } => {
                write!(f, "TREE {s}:")?;
                if !edges.is_empty() {
                    f.write_str(" ")?;
                }
                for (p, c) in edges {
                    write!(f, "({p} {c})")?;
                }
                Ok(())
            }
            Answer::Scc(labels) => write!(f, "SCC: {}", join(labels)),
            Answer::TopOrder(order) => write!(f, "TOPORDER: {}", join(order)),
            Answer::Dist { s, t, dist: Some(d), .. } => write!(f, "DIST {s} {t}: {d}"),
            Answer::Dist { s, t, dist: None, .. } => write!(f, "DIST {s} {t}: INF"),
        }
    }
}

/// A live structure for one of the online engines.
#[derive(Debug)]
pub enum Engine {
    DagPath(DagPath),
    DagTree(DagTree),
    FdScc(FdScc),
    FdPath(FdPath),
    FdTree(FdTree),
    IncTree(IncTree),
    IncPath(IncPath),
    IncApprox(IncApprox),
    IncExactPair(IncExact),
    IncExactTree(IncExact),
}

fn sorted_by_child(mut edges: Vec<(Vertex, Vertex)>) -> Vec<(Vertex, Vertex)> {
    edges.sort_unstable_by_key(|&(p, c)| (c, p));
    edges
}

impl Engine {
    /// Builds `kind` over `g`. Not available for the offline engine, which
    /// needs the whole script up front.
    pub fn new(kind: EngineKind, g: DiGraph, p: &Params, counters: Arc<Counters>) -> dyngraph_core::Result<Engine> {
        let n = g.n();
        Ok(match kind {
            EngineKind::DagPath => Engine::DagPath(DagPath::new(g, p.seed, counters)?),
            EngineKind::DagTree => {
                Engine::DagTree(DagTree::new(g, p.delta.unwrap_or_else(|| default_delta(n)), p.seed, counters)?)
            }
            EngineKind::FdScc => Engine::FdScc(FdScc::new(g, p.fd_phase_len(n), p.seed, counters)?),
            EngineKind::FdPath => Engine::FdPath(FdPath::new(g, p.fd_phase_len(n), p.seed, counters)?),
            EngineKind::FdTree => Engine::FdTree(FdTree::new(
                g,
                p.fd_phase_len(n),
                p.delta.unwrap_or_else(|| default_tree_delta(n)),
                p.seed,
                counters,
            )?),
            EngineKind::IncTree => Engine::IncTree(IncTree::new(g, p.inc_phase_len(n))?),
            EngineKind::IncPath => Engine::IncPath(IncPath::new(g, p.inc_phase_len(n))?),
            EngineKind::IncApprox => Engine::IncApprox(IncApprox::new(g, p.epsilon, p.inc_phase_len(n))?),
            EngineKind::IncExactPair => Engine::IncExactPair(IncExact::new(g, p.inc_phase_len(n))?),
            EngineKind::IncExactTree => Engine::IncExactTree(IncExact::new(g, p.inc_phase_len(n))?),
            EngineKind::Offline => {
                return Err(dyngraph_core::Error::Unsupported("the offline engine runs whole scripts"))
            }
        })
    }

    pub fn kind(&self) -> EngineKind {
        match self {
            Engine::DagPath(_) => EngineKind::DagPath,
            Engine::DagTree(_) => EngineKind::DagTree,
            Engine::FdScc(_) => EngineKind::FdScc,
            Engine::FdPath(_) => EngineKind::FdPath,
            Engine::FdTree(_) => EngineKind::FdTree,
            Engine::IncTree(_) => EngineKind::IncTree,
            Engine::IncPath(_) => EngineKind::IncPath,
            Engine::IncApprox(_) => EngineKind::IncApprox,
            Engine::IncExactPair(_) => EngineKind::IncExactPair,
            Engine::IncExactTree(_) => EngineKind::IncExactTree,
        }
    }

    pub fn graph(&self) -> &DiGraph {
        match self {
            Engine::DagPath(e) => e.graph(),
            Engine::DagTree(e) => e.graph(),
            Engine::FdScc(e) => e.graph(),
            Engine::FdPath(e) => e.graph(),
            Engine::FdTree(e) => e.graph(),
            Engine::IncTree(e) => e.graph(),
            Engine::IncPath(e) => e.graph(),
            Engine::IncApprox(e) => e.graph(),
            Engine::IncExactPair(e) | Engine::IncExactTree(e) => e.graph(),
        }
    }

    /// Applies an update or answers a query, also returning how a DAG
    /// engine's order changed on insertion.
    pub fn apply(&mut self, cmd: &Command) -> dyngraph_core::Result<(Option<Answer>, Option<Rewrite>)> {
        if let (Engine::DagPath(x), Command::Insert { u, v, w }) = (&mut *self, cmd) {
            return Ok((None, x.insert(*u, *v, *w)?));
        }
        if let (Engine::DagTree(x), Command::Insert { u, v, w }) = (&mut *self, cmd) {
            return Ok((None, x.insert(*u, *v, *w)?));
        }
        self.answer(cmd).map(|a| (a, None))
    }

    fn answer(&mut self, cmd: &Command) -> dyngraph_core::Result<Option<Answer>> {
        use Command as C;
        let unsupported = || dyngraph_core::Error::Unsupported("command not supported by this engine");
        match (self, cmd) {
            (e, C::Insert { u, v, w }) => {
                let (u, v, w) = (*u, *v, *w);
                match e {
                    Engine::DagPath(_) | Engine::DagTree(_) => unreachable!("handled in apply"),
                    Engine::FdScc(x) => x.insert(u, v, w)?,
                    Engine::FdPath(x) => x.insert(u, v, w)?,
                    Engine::FdTree(x) => x.insert(u, v, w)?,
                    Engine::IncTree(x) => x.insert_incoming_weighted(v, &[(u, w)])?,
                    Engine::IncPath(x) => x.insert_weighted(u, v, w)?,
                    Engine::IncApprox(x) => x.insert(u, v, w)?,
                    Engine::IncExactPair(x) | Engine::IncExactTree(x) => {
                        if w.is_some() {
                            return Err(dyngraph_core::Error::Unsupported("exact engines are unweighted"));
                        }
                        x.insert(u, v)?
                    }
                }
                Ok(None)
            }
            (Engine::IncTree(x), C::InsertInto { v, tails }) => x.insert_incoming_weighted(*v, tails).map(|_| None),
            (Engine::IncExactTree(x), C::InsertInto { v, tails }) => {
                if tails.iter().any(|(_, w)| w.is_some()) {
                    return Err(dyngraph_core::Error::Unsupported("exact engines are unweighted"));
                }
                let tails: Vec<Vertex> = tails.iter().map(|&(u, _)| u).collect();
                x.insert_incoming(*v, &tails).map(|_| None)
            }
            (e, C::Delete { u, v }) => {
                let (u, v) = (*u, *v);
                match e {
                    Engine::DagPath(x) => x.delete(u, v)?,
                    Engine::DagTree(x) => x.delete(u, v)?,
                    Engine::FdScc(x) => x.delete(u, v)?,
                    Engine::FdPath(x) => x.delete(u, v)?,
                    Engine::FdTree(x) => x.delete(u, v)?,
                    _ => return Err(unsupported()),
                }
                Ok(None)
            }
            (e, C::Path { s, t }) => {
                let (s, t) = (*s, *t);
                let path = match e {
                    Engine::DagPath(x) => x.path(s, t)?,
                    Engine::FdPath(x) => x.path(s, t)?,
                    Engine::IncPath(x) => x.path(s, t)?.map(|p| p.to_witness()),
                    Engine::IncApprox(x) => x.query(s, t)?.map(|(_, p)| p.to_witness()),
                    Engine::IncExactPair(x) => x.path(s, t)?.map(|(_, p)| p.to_witness()),
                    _ => return Err(unsupported()),
                };
                Ok(Some(Answer::Path { s, t, path }))
            }
            (e, C::Tree { s }) => {
                let s = *s;
                let (edges, depth) = match e {
                    Engine::DagTree(x) => (x.tree(s)?, None),
                    Engine::FdTree(x) => (x.tree(s)?, None),
                    Engine::IncTree(x) => (x.tree(s)?, None),
                    Engine::IncExactTree(x) => {
                        let (edges, depth) = x.tree(s)?;
                        (edges, Some(depth))
                    }
                    _ => return Err(unsupported()),
                };
                Ok(Some(Answer::Tree { s, edges: sorted_by_child(edges), depth }))
            }
            (Engine::FdScc(x), C::Scc) => Ok(Some(Answer::Scc(x.components()))),
            (Engine::DagPath(x), C::TopOrder) => Ok(Some(Answer::TopOrder(x.order().order().to_vec()))),
            (Engine::DagTree(x), C::TopOrder) => Ok(Some(Answer::TopOrder(x.paths().order().order().to_vec()))),
            (e, C::Dist { s, t }) => {
                let (s, t) = (*s, *t);
                let (dist, path) = match e {
                    Engine::IncApprox(x) => match x.query(s, t)? {
                        Some((d, p)) => (Some(d), Some(p.to_witness())),
                        None => (None, None),
                    },
                    Engine::IncExactPair(x) | Engine::IncExactTree(x) => match x.path(s, t)? {
                        Some((d, p)) => (Some(d as f64), Some(p.to_witness())),
                        None => (None, None),
                    },
                    _ => return Err(unsupported()),
                };
                Ok(Some(Answer::Dist { s, t, dist, path }))
            }
            _ => Err(unsupported()),
        }
    }
}

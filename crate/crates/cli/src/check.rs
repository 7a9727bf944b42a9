//! Oracle verification of answers and structural invariants.

use dyngraph_core::dag::Rewrite;
use dyngraph_core::oracle::{
    oracle_dist, oracle_reach, oracle_scc, reachable_vertices, verify_out_tree, verify_path, WEIGHT_TOLERANCE,
};
use dyngraph_core::{DiGraph, Vertex};

use crate::engine::{Answer, Engine, EngineKind};

/// Problems with `answer` on `g`; empty when it checks out.
pub fn check_answer(kind: EngineKind, g: &DiGraph, answer: &Answer, epsilon: f64) -> Vec<String> {
    let mut bad = Vec::new();
    match answer {
        Answer::Path { s, t, path } => match path {
            Some(p) => {
                if !verify_path(g, p, *s, *t, kind.simple_paths()) {
                    bad.push(format!("invalid path {s}->{t}: {:?}", p.vertices));
                }
                if kind == EngineKind::IncExactPair {
                    let want = oracle_dist(g, *s).0[*t];
                    if p.hops() as f64 != want {
                        bad.push(format!("path {s}->{t} has {} hops, distance is {want}", p.hops()));
                    }
                }
            }
            None if oracle_reach(g, *s, *t) => bad.push(format!("{s}->{t} reported unreachable")),
            None => {}
        },
        Answer::Tree { s, edges, depth } => {
            if !verify_out_tree(g, edges, *s, &reachable_vertices(g, *s)) {
                bad.push(format!("invalid tree from {s}"));
            }
            if let Some(depth) = depth {
                let (bfs, _) = oracle_dist(g, *s);
                for (v, d) in depth.iter().enumerate() {
                    let got = d.map_or(f64::INFINITY, |d| d as f64);
                    if got != bfs[v] {
                        bad.push(format!("tree from {s}: depth of {v} is {got}, distance is {}", bfs[v]));
                    }
                }
            }
        }
        Answer::Scc(labels) => {
            if *labels != oracle_scc(g) {
                bad.push(format!("scc labels {labels:?} differ from the oracle"));
            }
        }
        Answer::TopOrder(order) => {
            let mut pi = vec![usize::MAX; g.n()];
            for (i, &v) in order.iter().enumerate() {
                pi[v] = i;
            }
            if order.len() != g.n() || pi.contains(&usize::MAX) || g.edges().any(|(u, v)| pi[u] >= pi[v]) {
                bad.push("order is not topological".into());
            }
        }
        Answer::Dist { s, t, dist, path } => {
            let want = oracle_dist(g, *s).0[*t];
            match (dist, path) {
                (None, _) if want.is_infinite() => {}
                (None, _) => bad.push(format!("dist {s}->{t} reported infinite, is {want}")),
                (Some(d), path) => {
                    let tol = WEIGHT_TOLERANCE * d.abs().max(1.0);
                    if kind.exact_distances() {
                        if *d != want {
                            bad.push(format!("dist {s}->{t} = {d}, exact {want}"));
                        }
                    } else if !(*d >= want - tol && *d <= (1.0 + epsilon) * want + tol) {
                        bad.push(format!("dist {s}->{t} = {d} outside [{want}, (1+{epsilon})·{want}]"));
                    }
                    if let Some(p) = path {
                        if !verify_path(g, p, *s, *t, false) {
                            bad.push(format!("dist {s}->{t}: invalid path {:?}", p.vertices));
                        } else if (p.total_weight - d).abs() > tol {
                            bad.push(format!("dist {s}->{t} = {d} but path weighs {}", p.total_weight));
                        }
                    }
                }
            }
        }
    }
    bad
}

/// Order stability of an order-changing insertion: positions outside the
/// rewritten window are untouched, the window holds `S`, `Z`, `T` in that
/// order, and each group keeps its previous relative order.
pub fn check_rewrite(old: &[Vertex], new: &[Vertex], rw: &Rewrite) -> Vec<String> {
    let mut bad = Vec::new();
    let len = rw.s.len() + rw.z.len() + rw.t.len();
    let end = rw.start + len;
    if old[..rw.start] != new[..rw.start] || old[end..] != new[end..] {
        bad.push("positions outside the window moved".into());
    }
    let window: Vec<Vertex> = rw.s.iter().chain(&rw.z).chain(&rw.t).copied().collect();
    if new[rw.start..end] != window[..] {
        bad.push("window is not S·Z·T".into());
    }
    let mut old_pos = vec![0; old.len()];
    for (i, &v) in old.iter().enumerate() {
        old_pos[v] = i;
    }
    for group in [&rw.s, &rw.z, &rw.t] {
        if group.windows(2).any(|w| old_pos[w[0]] > old_pos[w[1]]) {
            bad.push("a group changed its relative order".into());
        }
    }
    bad
}

/// Invariants checked after every update.
pub fn check_state(engine: &Engine) -> Vec<String> {
    let mut bad = Vec::new();
    let g = engine.graph();
    match engine {
        Engine::DagPath(x) if !x.order().is_valid_for(g) => bad.push("order is not topological".into()),
        Engine::DagTree(x) if !x.paths().order().is_valid_for(g) => bad.push("order is not topological".into()),
        Engine::FdScc(x) => {
            if x.components() != oracle_scc(g) {
                bad.push("scc labels differ from the oracle".into());
            }
            if let Err(e) = x.dec().check_invariants() {
                bad.push(format!("decremental scc: {e}"));
            }
        }
        Engine::FdPath(x) => {
            if let Err(e) = x.core().dec().check_invariants() {
                bad.push(format!("decremental scc: {e}"));
            }
        }
        Engine::FdTree(x) => {
            if x.special_count() * x.delta() > 2 * g.n() {
                bad.push(format!("{} special components exceed 2n/delta", x.special_count()));
            }
            if let Err(e) = x.core().dec().check_invariants() {
                bad.push(format!("decremental scc: {e}"));
            }
        }
        _ => {}
    }
    bad
}

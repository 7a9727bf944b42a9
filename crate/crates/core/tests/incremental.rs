use dyngraph_core::incremental::{
    offline_run, CatPath, IncApprox, IncExact, IncPath, IncTree, OfflineAnswer, OfflineEngine, OfflineQuery,
};
use dyngraph_core::oracle::{
    close, floyd_warshall, oracle_dist, oracle_reach, reachable_vertices, verify_out_tree, verify_path,
};
use dyngraph_core::{DiGraph, UpdateEvent};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn ten_thousand_concatenations_keep_caches_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    // pieces[v] is a path ending at v; joining walks keeps endpoints consistent
    let mut pieces: Vec<CatPath> = (0..20).map(CatPath::empty).collect();
    for _ in 0..10_000 {
        let a = rng.random_range(0..20);
        let b = rng.random_range(0..20);
        let w = rng.random_range(1..5) as f64;
        let left = pieces[a].clone();
        let right = pieces[b].clone();
        let joined = left.via(left.end(), right.start(), w, &right).unwrap();
        assert_eq!(joined.hops(), left.hops() + 1 + right.hops());
        assert_eq!(joined.weight(), left.weight() + w + right.weight());
        assert!(joined.is_balanced());
        // operands are untouched
        assert_eq!(left, pieces[a]);
        let idx = rng.random_range(0..20);
        pieces[idx] = if joined.hops() > 400 { CatPath::empty(idx) } else { joined };
    }
    for p in &pieces {
        let edges = p.edges();
        assert_eq!(edges.len(), p.hops());
        assert!(edges.windows(2).all(|e| e[0].1 == e[1].0));
        assert_eq!(edges.iter().map(|e| e.2).sum::<f64>(), p.weight());
    }
}

/// Smallest `i` such that `s` reaches `t` using `G0` plus the first `i`
/// phase edges.
fn brute_level(g0: &DiGraph, eplus: &[(usize, usize)], s: usize, t: usize) -> Option<usize> {
    let mut g = g0.clone();
    for i in 0..=eplus.len() {
        if i > 0 {
            g.insert_edge(eplus[i - 1].0, eplus[i - 1].1, None).unwrap();
        }
        if oracle_reach(&g, s, t) {
            return Some(i);
        }
    }
    None
}

#[test]
fn incremental_paths_are_simple_and_use_the_first_connecting_edge() {
    let n = 15;
    let f = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut p = IncPath::new(DiGraph::new(n), f).unwrap();
    let mut g0 = DiGraph::new(n);
    let mut eplus = Vec::new();
    let mut inserted = 0;
    // 15 vertices allow 210 edges; stop a little short of a complete graph
    while inserted < 200 {
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        if u == v || p.graph().has_edge(u, v) {
            continue;
        }
        p.insert(u, v).unwrap();
        inserted += 1;
        eplus.push((u, v));
        if eplus.len() == f {
            g0 = p.graph().clone();
            eplus.clear();
        }
        if inserted % 10 != 0 {
            continue;
        }
        for s in 0..n {
            for t in 0..n {
                let got = p.path(s, t).unwrap();
                assert_eq!(p.level(s, t), brute_level(&g0, &eplus, s, t));
                match got {
                    Some(c) => assert!(verify_path(p.graph(), &c.to_witness(), s, t, true)),
                    None => assert!(!oracle_reach(p.graph(), s, t)),
                }
            }
        }
    }
}

#[test]
fn incremental_trees_span_the_reachable_set() {
    let n = 15;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut t = IncTree::new(DiGraph::new(n), 4).unwrap();
    for _ in 0..400 {
        let v = rng.random_range(0..n);
        let tails: Vec<usize> =
            (0..n).filter(|&u| u != v && !t.graph().has_edge(u, v) && rng.random_bool(0.08)).collect();
        if tails.is_empty() {
            continue;
        }
        t.insert_incoming(v, &tails).unwrap();
        for s in 0..n {
            let g = t.graph();
            assert!(verify_out_tree(g, &t.tree(s).unwrap(), s, &reachable_vertices(g, s)));
        }
    }
}

#[test]
fn approximate_distances_stay_within_stretch() {
    for (run, eps) in [1.0, 0.5, 0.25, 0.1].into_iter().enumerate() {
        let n = 10;
        let mut rng = ChaCha8Rng::seed_from_u64(10 + run as u64);
        let mut a = IncApprox::new(DiGraph::new_weighted(n, 4.0).unwrap(), eps, 3).unwrap();
        for step in 0..80 {
            let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
            if u == v || a.graph().has_edge(u, v) {
                continue;
            }
            a.insert(u, v, Some(rng.random_range(1.0..=4.0))).unwrap();
            if step % 4 != 0 {
                continue;
            }
            let fw = floyd_warshall(a.graph());
            for s in 0..n {
                for t in 0..n {
                    match a.query(s, t).unwrap() {
                        None => assert!(fw[s][t].is_infinite()),
                        Some((d, p)) => {
                            let tol = 1e-9 * d.max(1.0);
                            assert!(d >= fw[s][t] - tol && d <= (1.0 + eps) * fw[s][t] + tol, "{d} vs {}", fw[s][t]);
                            assert!(close(p.weight(), d));
                            assert!(verify_path(a.graph(), &p.to_witness(), s, t, false));
                        }
                    }
                }
            }
        }
    }
}

fn check_exact(e: &IncExact) {
    let g = e.graph();
    let n = g.n();
    for s in 0..n {
        let (bfs, _) = oracle_dist(g, s);
        let (tree, tdist) = e.tree(s).unwrap();
        assert!(verify_out_tree(g, &tree, s, &reachable_vertices(g, s)));
        for t in 0..n {
            let want = bfs[t].is_finite().then_some(bfs[t] as usize);
            assert_eq!(tdist[t], want);
            match e.path(s, t).unwrap() {
                Some((d, p)) => {
                    assert_eq!(Some(d), want);
                    assert!(verify_path(g, &p.to_witness(), s, t, false));
                    assert_eq!(p.hops(), d);
                }
                None => assert_eq!(want, None),
            }
        }
    }
    // the hitting set covers every stored path with exactly h hops
    let h = e.h();
    for s in 0..n {
        for t in 0..n {
            if e.matrix().get(s, t) == h as f64 {
                let vs = e.matrix().path(s, t).unwrap().vertices();
                assert!(vs[1..].iter().any(|v| e.hitting().contains(v)));
            }
        }
    }
}

#[test]
fn exact_distances_on_random_inserts() {
    let n = 16;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut e = IncExact::new(DiGraph::new(n), 4).unwrap();
    let mut done = 0;
    while done < 120 {
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        if u == v || e.graph().has_edge(u, v) {
            continue;
        }
        e.insert(u, v).unwrap();
        done += 1;
        if done % 6 == 0 {
            check_exact(&e);
        }
    }
}

#[test]
fn exact_distances_beyond_h_on_a_long_chain() {
    let h = 4;
    let n = 3 * h;
    let mut e = IncExact::new(DiGraph::new(n), n / h).unwrap();
    assert_eq!(e.h(), h);
    let mut order: Vec<usize> = (0..n - 1).collect();
    order.reverse();
    for v in order {
        e.insert_incoming(v + 1, &[v]).unwrap();
        check_exact(&e);
    }
    assert_eq!(e.dist(0, n - 1).unwrap(), Some(n - 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn incremental_rollback_is_exact(ops in proptest::collection::vec((0usize..8, 0usize..8), 1..30), cut in 0usize..30) {
        let mut p = IncPath::new(DiGraph::new(8), 3).unwrap();
        let mut e = IncExact::new(DiGraph::new(8), 3).unwrap();
        let mut a = IncApprox::new(DiGraph::new(8), 0.5, 3).unwrap();
        let mut marked = None;
        for (i, (u, v)) in ops.into_iter().enumerate() {
            if i == cut {
                p.mark();
                e.mark();
                a.mark();
                marked = Some((p.graph().clone(), (0..8).map(|s| (0..8).map(|t| (p.path(s, t).unwrap(), e.dist(s, t).unwrap(), a.query(s, t).unwrap())).collect::<Vec<_>>()).collect::<Vec<_>>()));
            }
            if u == v || p.graph().has_edge(u, v) { continue; }
            p.insert(u, v).unwrap();
            e.insert(u, v).unwrap();
            a.insert(u, v, None).unwrap();
        }
        if let Some((g, answers)) = marked {
            p.rollback().unwrap();
            e.rollback().unwrap();
            a.rollback().unwrap();
            prop_assert_eq!(p.graph(), &g);
            for s in 0..8 {
                for t in 0..8 {
                    prop_assert_eq!(&(p.path(s, t).unwrap(), e.dist(s, t).unwrap(), a.query(s, t).unwrap()), &answers[s][t]);
                }
            }
        }
    }

    #[test]
    fn offline_answers_match_each_version(ops in proptest::collection::vec((0usize..7, 0usize..7), 1..40)) {
        let n = 7;
        let mut g = DiGraph::new(n);
        let mut versions = vec![g.clone()];
        let mut updates = Vec::new();
        for (u, v) in ops {
            if u == v { continue; }
            let ev = if g.has_edge(u, v) { UpdateEvent::DeleteEdge { u, v } } else { UpdateEvent::InsertEdge { u, v, w: None } };
            g.apply_update(&ev).unwrap();
            updates.push(ev);
            versions.push(g.clone());
        }
        let queries: Vec<_> = (0..versions.len())
            .flat_map(|ver| (0..n).flat_map(move |s| (0..n).flat_map(move |t| [(ver, OfflineQuery::Path(s, t)), (ver, OfflineQuery::Dist(s, t))])))
            .collect();
        let out = offline_run(&DiGraph::new(n), &updates, &queries, |g| OfflineEngine::new(g, 2)).unwrap();
        for ((ver, q), ans) in queries.iter().zip(&out) {
            let gv = &versions[*ver];
            match (q, ans) {
                (OfflineQuery::Path(s, t), OfflineAnswer::Path(p)) => match p {
                    Some(w) => prop_assert!(verify_path(gv, w, *s, *t, true)),
                    None => prop_assert!(!oracle_reach(gv, *s, *t)),
                },
                (OfflineQuery::Dist(s, t), OfflineAnswer::Dist(d)) => {
                    prop_assert_eq!(d.map(|x| x as f64).unwrap_or(f64::INFINITY), oracle_dist(gv, *s).0[*t]);
                }
                _ => prop_assert!(false),
            }
        }
    }
}

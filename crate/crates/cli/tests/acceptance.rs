//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dyngraph::{fuzz, generate, run, Command, EngineKind, FuzzConfig, Mix, Params, Script};
use dyngraph_core::algebra::{bool_product_witness, minplus_approx, minplus_bounded, BoolMatrix, WeightMatrix};
use dyngraph_core::decscc::DecScc;
use dyngraph_core::{DiGraph, Vertex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INF: f64 = f64::INFINITY;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Outcome {
        Outcome { pass, detail: detail.into() }
    }
}

#[derive(Default)]
struct Tally {
    runs: usize,
    queries: usize,
    reseeded: usize,
    failures: Vec<String>,
}

impl Tally {
    fn add(&mut self, cfg: &FuzzConfig) {
        self.runs += 1;
        match fuzz(cfg) {
            Ok(r) => {
                self.queries += r.report.queries;
                if r.seeds.len() > 1 {
                    self.reseeded += 1;
                }
                if !r.report.ok() {
                    self.failures.push(format!("{} seed {}: {}", cfg.kind, cfg.seed, r.report.failures[0]));
                }
            }
            Err(e) => self.failures.push(format!("{} seed {}: {e}", cfg.kind, cfg.seed)),
        }
    }

    fn summary(&self) -> String {
        let mut s = format!(
            "{} runs, {} queries, {} reseeded, {} failed",
            self.runs,
            self.queries,
            self.reseeded,
            self.failures.len()
        );
        if let Some(f) = self.failures.first() {
            s.push_str(&format!("; first: {f}"));
        }
        s
    }
}

fn cfg(kind: EngineKind, n: usize, steps: usize, mix: Mix, seed: u64) -> FuzzConfig {
    FuzzConfig { kind, n, steps, mix, seed, cap: None, params: Params { seed: seed ^ 0x5eed, ..Params::default() } }
}

fn mix(insert: u32, delete: u32, query: u32) -> Mix {
    Mix { insert, delete, query }
}

fn differential_scc() -> Outcome {
    let start = Instant::now();
    let mut t = Tally::default();
    for i in 0..1000u64 {
        let mut c = cfg(EngineKind::FdScc, 4 + (i as usize % 11), 500, mix(5, 3, 1), 1_000 + i);
        c.params.phase_len = Some([2, 3, 5][i as usize % 3]);
        t.add(&c);
    }
    let elapsed = start.elapsed();
    let pass = t.failures.is_empty() && elapsed < Duration::from_secs(120);
    Outcome::new(pass, format!("{}, {:.1}s", t.summary(), elapsed.as_secs_f64()))
}

fn topological_order() -> Outcome {
    let mut t = Tally::default();
    for i in 0..1000u64 {
        let kind = if i % 4 == 3 { EngineKind::DagTree } else { EngineKind::DagPath };
        t.add(&cfg(kind, 4 + (i as usize % 17), 150, mix(5, 2, 2), 2_000 + i));
    }
    Outcome::new(t.failures.is_empty(), t.summary())
}

fn path_tree_validity() -> Outcome {
    use EngineKind::*;
    let kinds = [DagPath, FdPath, IncPath, IncApprox, IncExactPair, DagTree, FdTree, IncTree, IncExactTree];
    let mut t = Tally::default();
    for (k, &kind) in kinds.iter().enumerate() {
        let delete = if kind.supports(&Command::Delete { u: 0, v: 0 }) { 1 } else { 0 };
        for i in 0..24u64 {
            t.add(&cfg(kind, 5 + (i as usize % 10), 700, mix(2, delete, 6), 3_000 + 100 * k as u64 + i));
        }
    }
    let pass = t.failures.is_empty() && t.queries >= 100_000;
    Outcome::new(pass, t.summary())
}

fn counter_bound() -> Outcome {
    // the runner checks the bound on every dag-path query in check mode
    let mut t = Tally::default();
    for i in 0..300u64 {
        t.add(&cfg(EngineKind::DagPath, 4 + (i as usize % 17), 300, mix(3, 1, 4), 4_000 + i));
    }
    Outcome::new(t.failures.is_empty(), t.summary())
}

fn nesting_labels() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5_000);
    let mut checks = 0usize;
    let mut splits = 0usize;
    for run in 0..500 {
        let n = rng.random_range(2..=14);
        let density = rng.random_range(0.2..0.7);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.random_bool(density) {
                    edges.push((u, v));
                }
            }
        }
        let mut d = DecScc::new(DiGraph::from_edges(n, &edges).unwrap());
        // interval of each vertex's component at the start of the run
        let initial: Vec<(usize, usize)> = (0..n).map(|v| d.interval(d.comp_of(v)).unwrap()).collect();
        edges.shuffle(&mut rng);
        for &(u, v) in &edges {
            let before: Vec<(usize, usize)> = (0..n).map(|x| d.interval(d.comp_of(x)).unwrap()).collect();
            if d.delete(u, v).unwrap().is_some() {
                splits += 1;
            }
            if let Err(e) = d.check_invariants() {
                return Outcome::new(false, format!("run {run}: {e}"));
            }
            for id in d.ids().collect::<Vec<_>>() {
                let (lo, hi) = d.interval(id).unwrap();
                let members = d.members(id).unwrap();
                for &m in members {
                    let inside = |(a, b): (usize, usize)| a <= lo && hi <= b;
                    if !inside(before[m]) || !inside(initial[m]) || before[m] != before[members[0]] {
                        return Outcome::new(false, format!("run {run}: component {id} escapes its parent interval"));
                    }
                }
                checks += 1;
            }
            for (x, y) in d.cond_edges() {
                if d.label(x).unwrap() >= d.label(y).unwrap() {
                    return Outcome::new(false, format!("run {run}: condensation edge against label order"));
                }
            }
        }
        if d.count() != n {
            return Outcome::new(false, format!("run {run}: {} components left after dismantling", d.count()));
        }
    }
    Outcome::new(true, format!("500 runs, {splits} splits, {checks} component checks"))
}

fn special_bound() -> Outcome {
    // the runner checks special * delta <= 2n after every fd-tree update
    let mut t = Tally::default();
    for i in 0..240u64 {
        let mut c = cfg(EngineKind::FdTree, 4 + (i as usize % 11), 300, mix(5, 3, 1), 6_000 + i);
        c.params.delta = [None, Some(1), Some(2), Some(3)][i as usize % 4];
        t.add(&c);
    }
    Outcome::new(t.failures.is_empty(), t.summary())
}

fn approx_stretch() -> Outcome {
    let mut t = Tally::default();
    for (e, eps) in [1.0, 0.5, 0.1].into_iter().enumerate() {
        for i in 0..200u64 {
            let mut c = cfg(EngineKind::IncApprox, 3 + (i as usize % 10), 600, mix(1, 0, 1), 7_000 + 1_000 * e as u64 + i);
            c.cap = Some(1.0 + (i % 8) as f64);
            c.params.epsilon = eps;
            t.add(&c);
        }
    }
    Outcome::new(t.failures.is_empty(), t.summary())
}

/// Chain `0 -> 1 -> ... -> n-1` inserted in random order, with distance
/// queries after every insert, so most answers exceed `h`.
fn chain_script(kind: EngineKind, n: usize, rng: &mut ChaCha8Rng) -> Script {
    let mut links: Vec<Vertex> = (0..n - 1).collect();
    links.shuffle(rng);
    let mut commands = Vec::new();
    for u in links {
        commands.push(Command::Insert { u, v: u + 1, w: None });
        for _ in 0..3 {
            let s = rng.random_range(0..n);
            commands.push(match kind {
                EngineKind::IncExactTree => Command::Tree { s },
                _ => Command::Dist { s, t: rng.random_range(0..n) },
            });
        }
    }
    let commands = commands.into_iter().enumerate().map(|(i, c)| (i + 2, c)).collect();
    Script { n, cap: None, commands }
}

fn exact_incremental() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8_000);
    let mut t = Tally::default();
    let mut beyond_h = 0usize;
    for kind in [EngineKind::IncExactPair, EngineKind::IncExactTree] {
        for i in 0..400u64 {
            let phase_len = [None, Some(2), Some(3), Some(4)][i as usize % 4];
            if i % 4 == 0 {
                // crafted: long chain with h = ceil(n / F) well below n
                let n: usize = rng.random_range(9..=16);
                let params = Params { phase_len: Some(3), ..Params::default() };
                let h = n.div_ceil(3);
                t.runs += 1;
                match run(&chain_script(kind, n, &mut rng), kind, &params, true) {
                    Ok(r) => {
                        t.queries += r.queries;
                        beyond_h += r.lines.iter().filter(|l| long_answer(l, h)).count();
                        t.failures.extend(r.failures.into_iter().take(1).map(|f| format!("{kind} chain: {f}")));
                    }
                    Err(e) => t.failures.push(format!("{kind} chain: {e}")),
                }
                continue;
            }
            let mut c = cfg(kind, 5 + (i as usize % 12), 300, mix(3, 0, 2), 8_000 + i);
            c.params.phase_len = phase_len;
            t.add(&c);
        }
    }
    let pass = t.failures.is_empty() && beyond_h > 0;
    Outcome::new(pass, format!("{}, {beyond_h} chain answers beyond h", t.summary()))
}

/// Whether an answer line reports a distance or depth above `h`.
fn long_answer(line: &str, h: usize) -> bool {
    if let Some(rest) = line.strip_prefix("DIST ") {
        let d = rest.rsplit(": ").next().unwrap_or("");
        return d.parse::<usize>().is_ok_and(|d| d > h);
    }
    // a tree over a chain reaches depth > h iff it has more than h edges
    line.starts_with("TREE ") && line.matches('(').count() > h
}

fn random_weights(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64, max: f64, int: bool) -> WeightMatrix {
    let data: Vec<Vec<f64>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if !rng.random_bool(density) {
                        INF
                    } else if int {
                        rng.random_range(0..=max as u64) as f64
                    } else {
                        rng.random_range(1.0..max)
                    }
                })
                .collect()
        })
        .collect();
    WeightMatrix::from_rows(&data)
}

fn triple_loop(a: &WeightMatrix, b: &WeightMatrix) -> Vec<Vec<f64>> {
    (0..a.rows())
        .map(|i| (0..b.cols()).map(|j| (0..a.cols()).map(|k| a.get(i, k) + b.get(k, j)).fold(INF, f64::min)).collect())
        .collect()
}

fn product_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9_000);
    let dims = |rng: &mut ChaCha8Rng| (rng.random_range(1..=10), rng.random_range(1..=10), rng.random_range(1..=10));
    for i in 0..500 {
        let (r, m, c) = dims(&mut rng);
        let p = rng.random_range(0.05..0.6);
        let a = BoolMatrix::from_rows(&(0..r).map(|_| (0..m).map(|_| rng.random_bool(p)).collect()).collect::<Vec<_>>());
        let b = BoolMatrix::from_rows(&(0..m).map(|_| (0..c).map(|_| rng.random_bool(p)).collect()).collect::<Vec<_>>());
        let (prod, wit) = bool_product_witness(&a, &b).unwrap();
        for x in 0..r {
            for y in 0..c {
                let want = (0..m).any(|k| a.get(x, k) && b.get(k, y));
                let witnessed = wit.get(x, y).is_some_and(|k| a.get(x, k) && b.get(k, y));
                if prod.get(x, y) != want || witnessed != want {
                    return Outcome::new(false, format!("boolean instance {i} entry ({x},{y})"));
                }
            }
        }
    }
    for i in 0..500 {
        let (r, m, c) = dims(&mut rng);
        let h = rng.random_range(1..=12u64);
        let clip = |w: WeightMatrix| {
            let rows: Vec<Vec<f64>> = (0..w.rows())
                .map(|x| (0..w.cols()).map(|y| if w.get(x, y) <= h as f64 { w.get(x, y) } else { INF }).collect())
                .collect();
            WeightMatrix::from_rows(&rows)
        };
        let a = clip(random_weights(&mut rng, r, m, 0.7, 12.0, true));
        let b = clip(random_weights(&mut rng, m, c, 0.7, 12.0, true));
        let (d, wit) = minplus_bounded(&a, &b, h).unwrap();
        let exact = triple_loop(&a, &b);
        for x in 0..r {
            for y in 0..c {
                let want = if exact[x][y] <= h as f64 { exact[x][y] } else { INF };
                let witnessed = wit.get(x, y).map(|k| a.get(x, k) + b.get(k, y));
                if d.get(x, y) != want || witnessed.unwrap_or(INF) != want {
                    return Outcome::new(false, format!("bounded instance {i} entry ({x},{y})"));
                }
            }
        }
    }
    for i in 0..500 {
        let (r, m, c) = dims(&mut rng);
        let eps = [1.0, 0.5, 0.1, 0.01][i % 4];
        let a = random_weights(&mut rng, r, m, 0.8, 16.0, false);
        let b = random_weights(&mut rng, m, c, 0.8, 16.0, false);
        let (d, wit) = minplus_approx(&a, &b, eps).unwrap();
        let exact = triple_loop(&a, &b);
        for x in 0..r {
            for y in 0..c {
                let (got, e) = (d.get(x, y), exact[x][y]);
                let ok = if e.is_infinite() {
                    got.is_infinite() && wit.get(x, y).is_none()
                } else {
                    let k = wit.get(x, y);
                    got >= e
                        && got <= (1.0 + eps) * e * (1.0 + 1e-9)
                        && k.is_some_and(|k| a.get(x, k) + b.get(k, y) == got)
                };
                if !ok {
                    return Outcome::new(false, format!("approx instance {i} entry ({x},{y})"));
                }
            }
        }
    }
    Outcome::new(true, "500 instances each of boolean, bounded and approximate products")
}

fn offline_driver() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10_000);
    let mut t = Tally::default();
    for i in 0..100u64 {
        let n = rng.random_range(3..=12);
        let updates = generate(&cfg(EngineKind::Offline, n, 60, mix(2, 1, 0), 10_000 + i)).unwrap();
        let mut commands = Vec::new();
        let queries = |rng: &mut ChaCha8Rng, out: &mut Vec<Command>| {
            for _ in 0..2 {
                let (s, t) = (rng.random_range(0..n), rng.random_range(0..n));
                out.push(Command::Path { s, t });
                out.push(Command::Dist { s, t });
            }
        };
        queries(&mut rng, &mut commands);
        for (_, cmd) in updates.commands {
            commands.push(cmd);
            queries(&mut rng, &mut commands);
        }
        let commands = commands.into_iter().enumerate().map(|(i, c)| (i + 2, c)).collect();
        let script = Script { n, cap: None, commands };
        t.runs += 1;
        match run(&script, EngineKind::Offline, &Params::default(), true) {
            Ok(r) => {
                t.queries += r.queries;
                t.failures.extend(r.failures.into_iter().take(1).map(|f| format!("timeline {i}: {f}")));
            }
            Err(e) => t.failures.push(format!("timeline {i}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    let pass = t.failures.is_empty() && elapsed < Duration::from_secs(10);
    Outcome::new(pass, format!("{}, {:.1}s", t.summary(), elapsed.as_secs_f64()))
}

fn determinism() -> Outcome {
    let mut compared = 0;
    for kind in EngineKind::ALL {
        for i in 0..5u64 {
            let c = cfg(kind, 6 + i as usize, 200, Mix::default_for(kind), 11_000 + i);
            let script = generate(&c).unwrap();
            let go = |seed: u64| {
                let r = run(&script, kind, &Params { seed, ..c.params.clone() }, false).unwrap();
                (r.lines, r.records.iter().map(|x| (x.op, x.counters)).collect::<Vec<_>>())
            };
            let first = go(c.params.seed);
            if first != go(c.params.seed) {
                return Outcome::new(false, format!("{kind}: fixed seed gave different output"));
            }
            if !kind.is_randomized() && first != go(c.params.seed + 1) {
                return Outcome::new(false, format!("{kind}: output depends on the seed"));
            }
            compared += 1;
        }
    }
    Outcome::new(true, format!("{compared} scripts reproduced; seed-independent outside reach-engine engines"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("differential scc", differential_scc),
        ("topological order and stability", topological_order),
        ("path and tree validity", path_tree_validity),
        ("dag-path counter bound", counter_bound),
        ("nesting labels", nesting_labels),
        ("special component bound", special_bound),
        ("approximate stretch", approx_stretch),
        ("exact incremental distances", exact_incremental),
        ("product oracles", product_oracles),
        ("offline driver", offline_driver),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Outcome::new(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!outcome.pass);
        println!(
            "criterion {:>2} {name}: {verdict} ({}) [{:.1}s]",
            i + 1,
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

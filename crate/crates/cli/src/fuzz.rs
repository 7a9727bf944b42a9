//! Random script generation and differential runs against the oracles.

use dyngraph_core::oracle::oracle_reach;
use dyngraph_core::DiGraph;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{EngineKind, Params};
use crate::runner::{run, RunError, RunReport};
use crate::script::{Command, Script};

/// Relative frequencies of command kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mix {
    pub insert: u32,
    pub delete: u32,
    pub query: u32,
}

impl Mix {
    /// Deletions only for engines that accept them.
    pub fn default_for(kind: EngineKind) -> Mix {
        let dynamic = kind.supports(&Command::Delete { u: 0, v: 0 });
        Mix { insert: 5, delete: if dynamic { 3 } else { 0 }, query: 3 }
    }
}

impl std::str::FromStr for Mix {
    type Err = String;

    /// `insert=5,delete=2,query=3`; missing keys count as 0.
    fn from_str(s: &str) -> Result<Mix, String> {
        let mut mix = Mix { insert: 0, delete: 0, query: 0 };
        for part in s.split(',').filter(|p| !p.is_empty()) {
            let (key, val) = part.split_once('=').ok_or_else(|| format!("expected key=value, got `{part}`"))?;
            let val: u32 = val.parse().map_err(|_| format!("bad weight `{val}`"))?;
            match key.trim() {
                "insert" => mix.insert = val,
                "delete" => mix.delete = val,
                "query" => mix.query = val,
                other => return Err(format!("unknown mix key `{other}`")),
            }
        }
        if mix.insert + mix.delete + mix.query == 0 {
            return Err("mix is all zeros".into());
        }
        Ok(mix)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzConfig {
    pub kind: EngineKind,
    pub n: usize,
    pub steps: usize,
    pub mix: Mix,
    /// Drives script generation; `params.seed` drives the engine.
    pub seed: u64,
    /// Weight cap for weighted scripts.
    pub cap: Option<f64>,
    pub params: Params,
}

fn query_kinds(kind: EngineKind) -> Vec<&'static str> {
    let probe = [
        Command::Path { s: 0, t: 0 },
        Command::Tree { s: 0 },
        Command::Scc,
        Command::TopOrder,
        Command::Dist { s: 0, t: 0 },
    ];
    probe.iter().filter(|c| kind.supports(c)).map(|c| c.name()).collect()
}

/// A random valid script for `cfg.kind`: edges stay acyclic for DAG engines,
/// deletions remove existing edges, and batches use `insert-into` where
/// supported.
pub fn generate(cfg: &FuzzConfig) -> Result<Script, RunError> {
    let kind = cfg.kind;
    if cfg.mix.delete > 0 && !kind.supports(&Command::Delete { u: 0, v: 0 }) {
        return Err(RunError::EngineMismatch { line: 0, engine: kind, command: "delete" });
    }
    let n = cfg.n;
    let cap = if kind.exact_distances() { None } else { cfg.cap };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut g = match cap {
        Some(c) => DiGraph::new_weighted(n, c).map_err(|error| RunError::Engine { line: 1, error })?,
        None => DiGraph::new(n),
    };
    let queries = query_kinds(kind);
    let batches = kind.supports(&Command::InsertInto { v: 0, tails: vec![] });
    let total = cfg.mix.insert + cfg.mix.delete + cfg.mix.query;
    let weight = |rng: &mut ChaCha8Rng| cap.map(|c| (rng.random_range(1.0..=c) * 100.0f64).round() / 100.0);
    let mut commands = Vec::with_capacity(cfg.steps);
    while commands.len() < cfg.steps && n > 1 {
        let roll = rng.random_range(0..total);
        let cmd = if roll < cfg.mix.insert {
            if g.m() == n * (n - 1) {
                continue;
            }
            if batches && rng.random_bool(0.5) {
                let v = rng.random_range(0..n);
                let mut tails = Vec::new();
                for u in 0..n {
                    if u != v && !g.has_edge(u, v) && rng.random_bool(0.3) {
                        tails.push((u, weight(&mut rng)));
                    }
                }
                if tails.is_empty() {
                    continue;
                }
                Command::InsertInto { v, tails }
            } else {
                let (mut u, mut v) = (rng.random_range(0..n), rng.random_range(0..n));
                if kind.is_acyclic_only() && oracle_reach(&g, v, u) {
                    std::mem::swap(&mut u, &mut v);
                }
                if u == v || g.has_edge(u, v) {
                    continue;
                }
                Command::Insert { u, v, w: weight(&mut rng) }
            }
        } else if roll < cfg.mix.insert + cfg.mix.delete {
            let edges: Vec<_> = g.edges().collect();
            let Some(&(u, v)) = edges.choose(&mut rng) else { continue };
            Command::Delete { u, v }
        } else {
            let (s, t) = (rng.random_range(0..n), rng.random_range(0..n));
            match *queries.choose(&mut rng).expect("every engine answers some query") {
                "path" => Command::Path { s, t },
                "tree" => Command::Tree { s },
                "scc" => Command::Scc,
                "toporder" => Command::TopOrder,
                _ => Command::Dist { s, t },
            }
        };
        match &cmd {
            Command::Insert { u, v, w } => g.insert_edge(*u, *v, *w).expect("generated insert is valid"),
            Command::InsertInto { v, tails } => g.insert_incoming(*v, tails).expect("generated batch is valid"),
            Command::Delete { u, v } => drop(g.delete_edge(*u, *v).expect("generated delete is valid")),
            _ => {}
        }
        commands.push((commands.len() + 2, cmd));
    }
    Ok(Script { n, cap, commands })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzReport {
    pub script: Script,
    /// Report of the last attempt.
    pub report: RunReport,
    /// Engine seeds tried, in order; more than one means reseeding happened.
    pub seeds: Vec<u64>,
}

/// Engine seeds tried before a randomized engine's failure counts.
pub const RESEEDS: usize = 3;

/// Generates a script and runs it with checking. A failing randomized
/// engine is rerun with fresh seeds; the run fails only if every one of
/// [`RESEEDS`] seeds fails.
pub fn fuzz(cfg: &FuzzConfig) -> Result<FuzzReport, RunError> {
    let script = generate(cfg)?;
    let mut params = cfg.params.clone();
    let mut seeds = Vec::new();
    loop {
        seeds.push(params.seed);
        let report = run(&script, cfg.kind, &params, true)?;
        if report.ok() || !cfg.kind.is_randomized() || seeds.len() == RESEEDS {
            return Ok(FuzzReport { script, report, seeds });
        }
        params.seed = params.seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(kind: EngineKind) -> FuzzConfig {
        FuzzConfig { kind, n: 7, steps: 60, mix: Mix::default_for(kind), seed: 3, cap: None, params: Params::default() }
    }

    #[test]
    fn every_engine_passes_a_short_run() {
        for kind in EngineKind::ALL {
            let r = fuzz(&cfg(kind)).unwrap();
            assert!(r.report.ok(), "{kind}: {:?}", r.report.failures);
            assert_eq!(r.script.commands.len(), 60);
        }
    }

    #[test]
    fn weighted_scripts_respect_the_cap() {
        let c = FuzzConfig { cap: Some(3.0), steps: 200, ..cfg(EngineKind::IncApprox) };
        let r = fuzz(&c).unwrap();
        assert!(r.report.ok(), "{:?}", r.report.failures);
        let weights = r.script.commands.iter().filter_map(|(_, c)| match c {
            Command::Insert { w, .. } => *w,
            _ => None,
        });
        assert!(weights.clone().count() > 0 && weights.into_iter().all(|w| (1.0..=3.0).contains(&w)));
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let c = cfg(EngineKind::FdPath);
        let (a, b) = (fuzz(&c).unwrap(), fuzz(&c).unwrap());
        assert_eq!(a.script, b.script);
        assert_eq!(a.report.lines, b.report.lines);
        let counts = |r: &FuzzReport| r.report.records.iter().map(|x| x.counters).collect::<Vec<_>>();
        assert_eq!(counts(&a), counts(&b));
    }

    #[test]
    fn deletions_rejected_before_running() {
        let mut c = cfg(EngineKind::IncPath);
        c.mix.delete = 1;
        assert!(matches!(generate(&c), Err(RunError::EngineMismatch { .. })));
    }

    #[test]
    fn mix_parsing() {
        assert_eq!("insert=5,query=1".parse::<Mix>().unwrap(), Mix { insert: 5, delete: 0, query: 1 });
        assert!("insert=x".parse::<Mix>().is_err());
        assert!("".parse::<Mix>().is_err());
    }
}

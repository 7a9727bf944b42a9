//! Sequential execution of scripts with optional oracle checking.

use std::sync::Arc;
use std::time::Instant;

use dyngraph_core::counters::CounterSnapshot;
use dyngraph_core::incremental::{offline_run, OfflineAnswer, OfflineEngine, OfflineQuery};
use dyngraph_core::{Counters, DiGraph, UpdateEvent};

use crate::check::{check_answer, check_rewrite, check_state};
use crate::engine::{Answer, Engine, EngineKind, Params};
use crate::script::{Command, ParseError, Script};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}: `{command}` is not supported by engine {engine}")]
    EngineMismatch { line: usize, engine: EngineKind, command: &'static str },
    #[error("line {line}: {error}")]
    Engine { line: usize, error: dyngraph_core::Error },
}

/// Counter deltas and wall time for one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub step: usize,
    pub op: &'static str,
    pub wall_ns: u64,
    pub counters: CounterSnapshot,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunReport {
    /// One output line per query.
    pub lines: Vec<String>,
    pub records: Vec<StepRecord>,
    /// Check failures; the run stops after the first failing step.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    /// Number of queries answered.
    pub queries: usize,
}

impl RunReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn output(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

const CSV_HEADER: &str = "step,op,wall_ns,engine_queries,rank1_updates,rebuilds,detector_queries";

/// Counter records as CSV, with a leading `n` column when given.
pub fn counters_csv(records: &[StepRecord], n: Option<usize>) -> String {
    let mut out = String::new();
    if n.is_some() {
        out.push_str("n,");
    }
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        if let Some(n) = n {
            out.push_str(&format!("{n},"));
        }
        let c = &r.counters;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.step, r.op, r.wall_ns, c.engine_queries, c.rank1_updates, c.rebuilds, c.detector_queries
        ));
    }
    out
}

fn initial_graph(script: &Script) -> Result<DiGraph, RunError> {
    match script.cap {
        None => Ok(DiGraph::new(script.n)),
        Some(c) => DiGraph::new_weighted(script.n, c).map_err(|error| RunError::Engine { line: 1, error }),
    }
}

fn check_support(script: &Script, kind: EngineKind) -> Result<(), RunError> {
    for (line, cmd) in &script.commands {
        if !kind.supports(cmd) {
            return Err(RunError::EngineMismatch { line: *line, engine: kind, command: cmd.name() });
        }
    }
    Ok(())
}

/// Runs `script` on `kind`. With `check`, every answer and every update is
/// verified against the oracles.
pub fn run(script: &Script, kind: EngineKind, params: &Params, check: bool) -> Result<RunReport, RunError> {
    check_support(script, kind)?;
    if kind == EngineKind::Offline {
        return run_offline(script, params, check);
    }
    let counters = Arc::new(Counters::default());
    let g = initial_graph(script)?;
    let mut engine =
        Engine::new(kind, g, params, counters.clone()).map_err(|error| RunError::Engine { line: 1, error })?;
    let mut report = RunReport::default();
    if !kind.is_randomized() {
        report.notes.push(format!("{kind} is deterministic; --seed is ignored"));
    }
    for (step, (line, cmd)) in script.commands.iter().enumerate() {
        let old_order = match &engine {
            Engine::DagPath(x) => Some(x.order().clone()),
            Engine::DagTree(x) => Some(x.paths().order().clone()),
            _ => None,
        };
        let before = counters.snapshot();
        let start = Instant::now();
        let (answer, rewrite) = engine.apply(cmd).map_err(|error| RunError::Engine { line: *line, error })?;
        let wall_ns = start.elapsed().as_nanos() as u64;
        let used = counters.snapshot().since(&before);
        report.records.push(StepRecord { step: step + 1, op: cmd.name(), wall_ns, counters: used });
        if let Some(a) = &answer {
            report.lines.push(a.to_string());
            report.queries += 1;
        }
        if !check {
            continue;
        }
        let mut bad = match &answer {
            Some(a) => check_answer(kind, engine.graph(), a, params.epsilon),
            None => check_state(&engine),
        };
        if let (Some(old), Some(rw)) = (&old_order, &rewrite) {
            let new = match &engine {
                Engine::DagPath(x) => x.order().order().to_vec(),
                Engine::DagTree(x) => x.paths().order().order().to_vec(),
                _ => unreachable!(),
            };
            bad.extend(check_rewrite(old.order(), &new, rw));
        }
        if let (Some(order), Command::Path { s, t }) = (&old_order, cmd) {
            let bound = (order.pi(*t) as i64 - order.pi(*s) as i64 + 1).max(0);
            if used.engine_queries as i64 > bound {
                bad.push(format!("path {s}->{t} used {} engine queries, bound {bound}", used.engine_queries));
            }
        }
        if !bad.is_empty() {
            report.failures.extend(bad.into_iter().map(|b| format!("line {line} ({cmd}): {b}")));
            break;
        }
    }
    Ok(report)
}

fn run_offline(script: &Script, params: &Params, check: bool) -> Result<RunReport, RunError> {
    let mut g = initial_graph(script)?;
    let initial = g.clone();
    let mut updates = Vec::new();
    let mut queries = Vec::new();
    let mut versions = vec![g.clone()];
    let mut report = RunReport::default();
    report.notes.push("offline is deterministic; --seed is ignored".into());
    for (line, cmd) in &script.commands {
        let event = match cmd {
            Command::Insert { u, v, w } => Some(UpdateEvent::InsertEdge { u: *u, v: *v, w: *w }),
            Command::InsertInto { v, tails } => Some(UpdateEvent::InsertIncoming { v: *v, tails: tails.clone() }),
            Command::Delete { u, v } => Some(UpdateEvent::DeleteEdge { u: *u, v: *v }),
            Command::Path { s, t } => {
                queries.push((updates.len(), OfflineQuery::Path(*s, *t)));
                None
            }
            Command::Dist { s, t } => {
                queries.push((updates.len(), OfflineQuery::Dist(*s, *t)));
                None
            }
            _ => unreachable!("support checked"),
        };
        if let Some(e) = event {
            g.apply_update(&e).map_err(|error| RunError::Engine { line: *line, error })?;
            updates.push(e);
            versions.push(g.clone());
        }
    }
    let phase_len = params.inc_phase_len(script.n);
    let start = Instant::now();
    let answers = offline_run(&initial, &updates, &queries, |g| OfflineEngine::new(g, phase_len))
        .map_err(|error| RunError::Engine { line: 0, error })?;
    let wall_ns = start.elapsed().as_nanos() as u64;
    for (step, (_, cmd)) in script.commands.iter().enumerate() {
        report.records.push(StepRecord { step: step + 1, op: cmd.name(), wall_ns: 0, counters: Default::default() });
    }
    report.records.push(StepRecord {
        step: script.commands.len() + 1,
        op: "replay",
        wall_ns,
        counters: Default::default(),
    });
    for ((version, q), a) in queries.iter().zip(answers) {
        let answer = match (q, a) {
            (OfflineQuery::Path(s, t), OfflineAnswer::Path(path)) => Answer::Path { s: *s, t: *t, path },
            (OfflineQuery::Dist(s, t), OfflineAnswer::Dist(d)) => {
                Answer::Dist { s: *s, t: *t, dist: d.map(|d| d as f64), path: None }
            }
            _ => unreachable!("answers follow query kinds"),
        };
        report.lines.push(answer.to_string());
        report.queries += 1;
        if check {
            let bad = check_answer(EngineKind::Offline, &versions[*version], &answer, params.epsilon);
            if !bad.is_empty() {
                report.failures.extend(bad.into_iter().map(|b| format!("version {version}: {b}")));
                break;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_text(text: &str, kind: EngineKind) -> RunReport {
        run(&Script::parse(text).unwrap(), kind, &Params::default(), true).unwrap()
    }

    #[test]
    fn dag_path_chain() {
        let r = run_text("init 3; insert 0 1; insert 1 2; path 0 2", EngineKind::DagPath);
        assert_eq!(r.lines, vec!["PATH 0 2: 0 1 2"]);
        assert!(r.ok());
    }

    #[test]
    fn two_cycle_scc() {
        let r = run_text("init 2; insert 0 1; insert 1 0; scc", EngineKind::FdScc);
        assert_eq!(r.lines, vec!["SCC: 0 0"]);
    }

    #[test]
    fn deletions_rejected_for_incremental_engines() {
        let s = Script::parse("init 2; insert 0 1; delete 0 1").unwrap();
        let e = run(&s, EngineKind::IncPath, &Params::default(), false).unwrap_err();
        assert!(matches!(e, RunError::EngineMismatch { line: 1, .. }));
    }

    #[test]
    fn offline_versions() {
        let r = run_text("init 2; dist 0 1; insert 0 1; dist 0 1; delete 0 1; path 0 1", EngineKind::Offline);
        assert_eq!(r.lines, vec!["DIST 0 1: INF", "DIST 0 1: 1", "PATH 0 1: UNREACHABLE"]);
        assert!(r.ok());
    }

    #[test]
    fn csv_layout() {
        let r = run_text("init 2; insert 0 1; path 0 1", EngineKind::DagPath);
        let csv = counters_csv(&r.records, None);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert!(lines.next().unwrap().starts_with("1,insert,"));
        assert_eq!(csv.lines().count(), 3);
    }
}

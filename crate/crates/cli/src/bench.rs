//! Per-update timings and counters over several graph sizes.

use crate::engine::{EngineKind, Params};
use crate::fuzz::{generate, FuzzConfig, Mix};
use crate::runner::{counters_csv, run, RunError};

/// CSV of per-step records for a generated script at each size, with an
/// `n` column. No checking and no pass/fail.
pub fn bench(kind: EngineKind, sizes: &[usize], steps: usize, seed: u64, params: &Params) -> Result<String, RunError> {
    let mut out = String::new();
    for (i, &n) in sizes.iter().enumerate() {
        let cfg = FuzzConfig { kind, n, steps, mix: Mix::default_for(kind), seed, cap: None, params: params.clone() };
        let script = generate(&cfg)?;
        let report = run(&script, kind, params, false)?;
        let csv = counters_csv(&report.records, Some(n));
        // keep a single header
        let body = if i == 0 { csv.as_str() } else { csv.split_once('\n').map_or("", |(_, b)| b) };
        out.push_str(body);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_header_and_a_row_per_step() {
        let csv = bench(EngineKind::FdScc, &[6, 8], 10, 1, &Params::default()).unwrap();
        assert_eq!(csv.lines().filter(|l| l.starts_with("n,")).count(), 1);
        assert_eq!(csv.lines().count(), 21);
        assert!(csv.lines().nth(11).unwrap().starts_with("8,1,"));
    }
}

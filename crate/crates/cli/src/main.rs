use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use dyngraph::{bench::bench, counters_csv, fuzz, run, EngineKind, FuzzConfig, Mix, Params, Script};

#[derive(Parser)]
#[command(name = "dyngraph", version, about = "Run, fuzz and benchmark dynamic digraph structures")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Tuning {
    #[arg(long, value_enum)]
    engine: EngineKind,
    /// Seed for the randomized reachability engines.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    /// Phase length F (updates per phase).
    #[arg(long = "phase-len")]
    phase_len: Option<usize>,
    /// Block width for tree detectors.
    #[arg(long)]
    delta: Option<usize>,
    /// Exponent for the incremental phase length `n^alpha`.
    #[arg(long, default_value_t = dyngraph_core::incremental::DEFAULT_ALPHA)]
    alpha: f64,
}

impl Tuning {
    fn params(&self) -> Params {
        Params { seed: self.seed, epsilon: self.epsilon, phase_len: self.phase_len, delta: self.delta, alpha: self.alpha }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute a script and print one line per query.
    Run {
        script: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
        /// Verify every answer and update against brute-force oracles.
        #[arg(long)]
        check: bool,
        /// Write per-step counters as CSV.
        #[arg(long)]
        counters: Option<PathBuf>,
    },
    /// Generate random scripts and run them with checking.
    Fuzz {
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        /// Number of scripts, generated from seeds 0..runs.
        #[arg(long, default_value_t = 10)]
        runs: u64,
        /// e.g. `insert=5,delete=3,query=3`.
        #[arg(long)]
        mix: Option<Mix>,
        /// Weight cap C; omit for unweighted scripts.
        #[arg(long)]
        weighted: Option<f64>,
        /// Directory to save failing scripts in.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Per-step timings and counters for several sizes.
    Bench {
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long, value_delimiter = ',', default_value = "64,128,256")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> anyhow::Result<ExitCode> {
    match Cli::parse().cmd {
        Cmd::Run { script, tuning, check, counters } => {
            let text = std::fs::read_to_string(&script).with_context(|| format!("reading {}", script.display()))?;
            let parsed = Script::parse(&text)?;
            let report = run(&parsed, tuning.engine, &tuning.params(), check)?;
            print!("{}", report.output());
            for note in &report.notes {
                eprintln!("note: {note}");
            }
            if let Some(path) = counters {
                std::fs::write(&path, counters_csv(&report.records, None))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if !report.ok() {
                for f in &report.failures {
                    eprintln!("check failed: {f}");
                }
                return Ok(ExitCode::FAILURE);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Fuzz { tuning, n, steps, runs, mix, weighted, save } => {
            let kind = tuning.engine;
            let mix = mix.unwrap_or_else(|| Mix::default_for(kind));
            let (mut failed, mut queries, mut reseeded) = (0, 0, 0);
            for seed in 0..runs {
                let cfg = FuzzConfig { kind, n, steps, mix, seed, cap: weighted, params: tuning.params() };
                let r = fuzz(&cfg)?;
                queries += r.report.queries;
                reseeded += usize::from(r.seeds.len() > 1);
                if !r.report.ok() {
                    failed += 1;
                    eprintln!("seed {seed}: {}", r.report.failures.join("; "));
                    if let Some(dir) = &save {
                        std::fs::create_dir_all(dir)?;
                        std::fs::write(dir.join(format!("{kind}-{seed}.txt")), r.script.to_string())?;
                    }
                }
            }
            println!("{kind}: {runs} runs, {queries} queries, {reseeded} reseeded, {failed} failed");
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Bench { tuning, sizes, steps, out } => {
            if sizes.is_empty() {
                bail!("no sizes given");
            }
            let csv = bench(tuning.engine, &sizes, steps, tuning.seed, &tuning.params())?;
            match out {
                Some(path) => std::fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{csv}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

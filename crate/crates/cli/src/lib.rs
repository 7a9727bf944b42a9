//! Script runner, differential fuzzer and counter reporter for the
//! structures in `dyngraph-core`.

pub mod bench;
pub mod check;
pub mod engine;
pub mod fuzz;
pub mod runner;
pub mod script;

pub use engine::{Answer, Engine, EngineKind, Params};
pub use fuzz::{fuzz, generate, FuzzConfig, FuzzReport, Mix};
pub use runner::{counters_csv, run, RunError, RunReport, StepRecord};
pub use script::{Command, ParseError, Script};

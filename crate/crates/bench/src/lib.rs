//! Benchmark harness for the membrane wrinkling solver: four validation
//! problems, a closed-form bending reference, postprocessing into probe and
//! field tables, and a property suite over the constitutive split.

pub mod analytic;
pub mod benchmarks;
pub mod config;
pub mod output;
pub mod post;
pub mod report;
pub mod verify;

pub use benchmarks::{build, BuiltCase, CaseSetup};
pub use config::{BenchmarkKind, Config, Overrides};
pub use report::{check_expectations, run_case, summarize, RunReport};

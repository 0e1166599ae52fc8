//! Benchmark harness for the `ballquad` integrator: a registry of classical
//! test integrals, independent reference oracles, and a sequential runner.

pub mod cases;
pub mod reference;
pub mod runner;

pub use cases::{plan, CasePlan, Reference, ALL_CASES};
pub use runner::{run_case, CaseReport, Overrides};

//! Seeded Monte-Carlo engine.
//!
//! A sweep walks the near-user distance over [`SweepParams`]; at every point
//! each trial draws fresh fading for the three hops, configures the surface
//! once, and evaluates every path-loss model on that same draw. Trials are
//! independent and may run on any number of workers; aggregation always
//! happens afterwards in ascending trial order, so results are bit-identical
//! regardless of scheduling.

mod engine;
mod exec;
mod scenario;
mod stats;

pub use engine::{
    compare_models, mean_cascaded_power, run_sweep, run_trial, sweep_models, ModelMetrics,
    PhaseDesign, SweepRecord, TrialMetrics, UserStats,
};
pub use exec::Execution;
pub use scenario::{ModelKind, PhasePolicy, PointContext, Scenario, SweepParams};
pub use stats::Stat;

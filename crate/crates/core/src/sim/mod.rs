//! Deterministic scenario engine, evaluation metrics, and the canned
//! experiments behind the CLI.
//!
//! A scenario drives `rounds` of transactions over a population of honest
//! and malicious nodes. Every round each consumer picks a provider — with
//! probability `greedy_alpha` from the current top-trust "power nodes",
//! otherwise uniformly — receives service quality drawn from the provider's
//! behavior profile, and reports a score (truthfully or inverted, per its
//! own honesty) to the coordinator, which immediately recomputes the
//! provider's fuzzy trust. Everything is driven by one seeded RNG stream, so
//! a config reproduces its outputs bit for bit.

mod config;
mod experiments;
mod metrics;
mod profile;
mod report;
mod scenario;

pub use config::ScenarioConfig;
pub use experiments::{
    chord_cost, detect_experiment, rms_sweep, surface, table2, table3, ChordCostRow, DetectReport,
    DetectSeedRow, InputSlot, RmsSweepCell, SurfaceRow, Table2Row, Table3Row, TABLE2_REFERENCE,
};
pub use metrics::{detection_metrics, rms_error, DetectionMetrics, RmsError, RMS_EPSILON};
pub use profile::{BehaviorProfile, Honesty};
pub use report::{
    chord_csv, detect_csv, metrics_csv, rms_csv, surface_csv, table2_csv, table3_csv, trust_csv,
};
pub use scenario::{derive_seed, run_replicas, run_scenario, ReplicaReport, ScenarioReport};
